"""Builders for the affine groups, semilinear subgroups, tensor families,
Hamming graphs and the small named examples.

Points of an affine group on GF(p)^d are vector indices (coordinate 0 least
significant); for semilinear groups the points are field indices, which is the
same encoding.  Elements of the 1-dimensional semilinear group are written
w^e a^s and act on the right: x -> (x * w^e)^(p^s).
"""
from __future__ import annotations

import hashlib
import json
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from sympy import isprime, primefactors

from .gfield import FieldSpec, make_field
from .linalg import (
    FieldMatrix,
    MatrixGFp,
    blowup,
    direct_sum,
    field_kron,
    identity,
    is_invertible,
    kron,
    matrix_permutation,
    semilinear_blowup,
    translation_permutation,
)
from .orbitals import Digraph
from .permgrp import Permutation, PermGroup

DEFAULT_DEGREE_BOUND = 4096


class DescriptorError(ValueError):
    """A group description violates its preconditions."""


class StandardFormError(DescriptorError):
    pass


class ConditionError(DescriptorError):
    pass


def _check_degree(n: int, bound: int) -> None:
    if n > bound:
        raise DescriptorError(f"degree {n} exceeds the configured bound {bound}")


# --- affine groups ---------------------------------------------------------------

def translations(p: int, d: int) -> list[Permutation]:
    """Translations by the standard basis vectors."""
    out = []
    for i in range(d):
        v = np.zeros(d, dtype=np.int64)
        v[i] = 1
        out.append(translation_permutation(p, d, v))
    return out


def affine_group(
    p: int,
    d: int,
    stabilizer_gens: Sequence[MatrixGFp | Permutation],
    *,
    order: int | None = None,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
) -> PermGroup:
    """V x| G_0 on p^d points; stabilizer generators are matrices or point maps fixing 0."""
    n = p**d
    _check_degree(n, degree_bound)
    gens = translations(p, d)
    for a in stabilizer_gens:
        if isinstance(a, MatrixGFp):
            if a.p != p or a.rows != d or not is_invertible(a):
                raise DescriptorError("stabilizer generator is not an invertible d x d matrix over GF(p)")
            gens.append(matrix_permutation(a))
        else:
            if a.degree != n or a(0) != 0:
                raise DescriptorError("stabilizer generator must be a permutation of GF(p)^d fixing 0")
            gens.append(a)
    return PermGroup(gens, n, order=order)


def gl_order(q: int, m: int) -> int:
    return math.prod(q**m - q**i for i in range(m))


def gl_generators(p: int, m: int) -> list[MatrixGFp]:
    """diag(w, 1, ..., 1), the transvection I + E_01 and the m-cycle permutation matrix."""
    w = int(make_field(p, 1).exp[1 % (p - 1)])
    d = np.eye(m, dtype=np.int64)
    d[0, 0] = w
    gens = [MatrixGFp(p, d)]
    if m > 1:
        t = np.eye(m, dtype=np.int64)
        t[0, 1] = 1
        c = np.roll(np.eye(m, dtype=np.int64), 1, axis=1)
        gens += [MatrixGFp(p, t), MatrixGFp(p, c)]
    return [g for g in gens if not (g.a == np.eye(m)).all()]


def gl_field_generators(f: FieldSpec, m: int) -> list[FieldMatrix]:
    """The same three generators of GL_m(q), entries as field indices."""
    w = int(f.exp[1])
    d = np.eye(m, dtype=np.int64)
    d[0, 0] = w
    gens = [FieldMatrix(f, d)]
    if m > 1:
        t = np.eye(m, dtype=np.int64)
        t[0, 1] = 1
        gens += [FieldMatrix(f, t), FieldMatrix(f, np.roll(np.eye(m, dtype=np.int64), 1, axis=1))]
    return gens


# --- 1-dimensional semilinear group ----------------------------------------------

def omega_power(f: FieldSpec, k: int) -> Permutation:
    """x -> x * w^k on the field indices."""
    img = np.zeros(f.card, dtype=np.int64)
    nz = np.arange(1, f.card)
    img[nz] = f.exp[(f.log[nz] + k) % (f.card - 1)]
    return Permutation(img, check=False)


def frobenius_power(f: FieldSpec, s: int) -> Permutation:
    """x -> x^(p^s)."""
    img = np.zeros(f.card, dtype=np.int64)
    nz = np.arange(1, f.card)
    e = pow(f.p, s % f.d, f.card - 1)
    img[nz] = f.exp[(f.log[nz] * e) % (f.card - 1)]
    return Permutation(img, check=False)


def semilinear_element(f: FieldSpec, e: int, s: int) -> Permutation:
    """w^e a^s acting on the right: multiply by w^e, then raise to p^s."""
    return omega_power(f, e) * frobenius_power(f, s)


@dataclass(frozen=True)
class StandardForm:
    p: int
    d: int
    m: int
    e: int
    s: int

    def violations(self) -> list[str]:
        p, d, m, e, s = self.p, self.d, self.m, self.e, self.s
        q1 = p**d - 1
        out = []
        if m <= 0 or q1 % m:
            out.append(f"standard form needs m | p^d - 1, but {m} does not divide {q1}")
        if s <= 0 or d % s:
            out.append(f"standard form needs s | d, but {s} does not divide {d}")
        elif m > 0 and (e * (q1 // (p**s - 1))) % m:
            out.append(
                f"standard form needs e(p^d-1)/(p^s-1) = 0 mod m, "
                f"but {e}*{q1 // (p**s - 1)} is not divisible by {m}"
            )
        return out

    def validate(self) -> None:
        if not isprime(self.p):
            raise StandardFormError(f"{self.p} is not prime")
        bad = self.violations()
        if bad:
            raise StandardFormError("; ".join(bad))

    @property
    def order(self) -> int:
        return ((self.p**self.d - 1) // self.m) * (self.d // self.s)


@dataclass(frozen=True)
class SemilinearSubgroup:
    form: StandardForm
    generators: tuple[Permutation, Permutation]

    @property
    def order(self) -> int:
        return self.form.order


def gammaL1_subgroup(p: int, d: int, m: int, e: int, s: int) -> SemilinearSubgroup:
    """<w^m, w^e a^s> in standard form, as permutations of GF(p^d)."""
    form = StandardForm(p, d, m, e, s)
    form.validate()
    f = make_field(p, d)
    return SemilinearSubgroup(form, (omega_power(f, m), semilinear_element(f, e, s)))


def gammaL1_affine(p: int, d: int, m: int, e: int, s: int, degree_bound: int = DEFAULT_DEGREE_BOUND) -> PermGroup:
    """GF(p^d) x| <w^m, w^e a^s>."""
    h = gammaL1_subgroup(p, d, m, e, s)
    return affine_group(p, d, list(h.generators), order=p**d * h.order, degree_bound=degree_bound)


@dataclass
class ConditionReport:
    ok: bool
    conditions: dict[str, bool]
    messages: list[str] = field(default_factory=list)


def two_orbit_conditions(p: int, d: int, m1: int, v: int, e: int, s: int) -> ConditionReport:
    """Conditions under which <w^(v m1), w^e a^s> has exactly two orbits on the non-zero vectors."""
    c: dict[str, bool] = {}
    msgs = []
    c["parity"] = m1 % 2 == 1 and s % 2 == 1 and m1 > 0 and s > 0
    if not c["parity"]:
        msgs.append("m1 and s must be odd positive integers")
    ps1 = p**s - 1
    c["(1) prime divisors of m1 divide p^s-1"] = all(ps1 % r == 0 for r in primefactors(m1)) if m1 > 0 else False
    cond2 = v > 2 and isprime(v)
    if cond2:
        k = s * m1
        cond2 = pow(p, k * (v - 1), v) == 1 and all(pow(p, k * t, v) != 1 for t in range(1, v - 1))
    c["(2) v odd prime, p^(s m1) has order v-1 mod v"] = cond2
    c["(3) gcd(e, m1) = 1"] = math.gcd(e, m1) == 1
    c["(4) m1 s (v-1) divides d"] = v > 1 and m1 > 0 and s > 0 and d % (m1 * s * (v - 1)) == 0
    for name, okay in c.items():
        if not okay and name != "parity":
            msgs.append(f"condition {name} fails")
    return ConditionReport(all(c.values()), c, msgs)


def rank4_gammaL1(p: int, d: int, m1: int, e: int, s: int, degree_bound: int = DEFAULT_DEGREE_BOUND) -> PermGroup:
    """N : <w^(3 m1), (w^e a^s)^2>, whose stabilizer has three equal orbits on V*."""
    rep = two_orbit_conditions(p, d, m1, 3, e, s)
    if not rep.ok:
        raise ConditionError("; ".join(rep.messages))
    if math.gcd(m1, 3) != 1:
        raise ConditionError("gcd(m1, 3) must be 1")
    _check_degree(p**d, degree_bound)
    f = make_field(p, d)
    sq = semilinear_element(f, e, s) ** 2
    return affine_group(p, d, [omega_power(f, 3 * m1), sq], degree_bound=degree_bound)


# --- tensor families ----------------------------------------------------------------

def family_G(m: int, degree_bound: int = DEFAULT_DEGREE_BOUND) -> PermGroup:
    """V x| (D_8 o GL_m(3)) on V = X (x) Y, dim X = 2, dim Y = m, over GF(3)."""
    if m < 2:
        raise DescriptorError("family G needs m >= 2")
    p = 3
    _check_degree(p ** (2 * m), degree_bound)
    im = identity(p, m)
    swap = MatrixGFp(p, [[0, 1], [1, 0]])
    neg = MatrixGFp(p, [[1, 0], [0, -1]])
    stab = [kron(swap, im), kron(neg, im)]
    stab += [kron(identity(p, 2), b) for b in gl_generators(p, m)]
    return affine_group(p, 2 * m, stab, degree_bound=degree_bound)


def family_H(m: int, degree_bound: int = DEFAULT_DEGREE_BOUND) -> PermGroup:
    """V x| ((C_3 wr S_2) o GL_m(4)).2 on V = X (x) Y over GF(4), as a group on 2^(4m) points."""
    if m < 2:
        raise DescriptorError("family H needs m >= 2")
    _check_degree(4 ** (2 * m), degree_bound)
    f = make_field(2, 2)
    lam = int(f.exp[1])
    im = FieldMatrix.scalar(f, m, 1)
    i2 = FieldMatrix.scalar(f, 2, 1)
    xs = [
        FieldMatrix(f, [[lam, 0], [0, 1]]),
        FieldMatrix(f, [[1, 0], [0, lam]]),
        FieldMatrix(f, [[0, 1], [1, 0]]),
    ]
    stab = [matrix_permutation(blowup(field_kron(x, im))) for x in xs]
    stab += [matrix_permutation(blowup(field_kron(i2, b))) for b in gl_field_generators(f, m)]
    stab.append(semilinear_blowup(FieldMatrix.scalar(f, 2 * m, 1), 1))
    return affine_group(2, 4 * m, stab, degree_bound=degree_bound)


def family_labels(kind: str, m: int) -> dict[str, int]:
    """A representative point of the named suborbits B1 (direct-sum summands) and B2."""
    if kind == "family-G":
        return {"B1": 1, "B2": 1 + 3**m}
    if kind == "family-H":
        return {"B1": 1, "B2": 1 + 4**m}
    raise ValueError(kind)


def direct_sum_group(p: int, m: int) -> PermGroup:
    """V x| (GL_m(p) wr C_2), stabilizer of V = V_1 + V_2 (imprimitive rank 3 class)."""
    im = identity(p, m)
    stab = []
    for b in gl_generators(p, m):
        stab += [direct_sum(b, im), direct_sum(im, b)]
    swap = np.zeros((2 * m, 2 * m), dtype=np.int64)
    swap[:m, m:] = np.eye(m, dtype=np.int64)
    swap[m:, :m] = np.eye(m, dtype=np.int64)
    stab.append(MatrixGFp(p, swap))
    return affine_group(p, 2 * m, stab)


def tensor_group(p: int, e: int, m: int) -> PermGroup:
    """V x| (GL_2(q) o GL_m(q)) on GF(q)^2 (x) GF(q)^m, q = p^e, as a group on q^(2m) points."""
    f = make_field(p, e)
    im = FieldMatrix.scalar(f, m, 1)
    i2 = FieldMatrix.scalar(f, 2, 1)
    stab = [matrix_permutation(blowup(field_kron(x, im))) for x in gl_field_generators(f, 2)]
    stab += [matrix_permutation(blowup(field_kron(i2, b))) for b in gl_field_generators(f, m)]
    return affine_group(p, 2 * m * e, stab)


# --- Hamming graphs -------------------------------------------------------------------

def hamming_graph(k: int) -> Digraph:
    """H(2, k) on k^2 vertices; vertex (a, b) has index a*k + b."""
    if k < 2:
        raise DescriptorError("H(2, k) needs k >= 2")
    idx = np.arange(k * k)
    a, b = idx // k, idx % k
    adj = (a[:, None] != a[None, :]).astype(int) + (b[:, None] != b[None, :]) == 1
    u, v = np.nonzero(adj)
    return Digraph(k * k, np.stack([u, v], axis=1))


def hamming_wreath_generators(k: int) -> list[Permutation]:
    """Generators of S_k wr S_2 acting on the vertices of H(2, k)."""
    idx = np.arange(k * k)
    a, b = idx // k, idx % k
    out = []
    for sigma in (np.roll(np.arange(k), -1), np.r_[1, 0, np.arange(2, k)]):
        out.append(Permutation(sigma[a] * k + b, check=False))
        out.append(Permutation(a * k + sigma[b], check=False))
    out.append(Permutation(b * k + a, check=False))
    return [g for g in out if not g.is_identity()]


# --- named examples ---------------------------------------------------------------------

def _q8_pair() -> tuple[int, int]:
    for a in range(11):
        for b in range(11):
            if (a * a + b * b) % 11 == 10:
                return a, b
    raise AssertionError("unreachable")


def _catalog_121_23() -> PermGroup:
    a, b = _q8_pair()
    i = MatrixGFp(11, [[0, 1], [-1, 0]])
    j = MatrixGFp(11, [[a, b], [b, -a]])
    w = int(make_field(11, 1).exp[1])
    scal = MatrixGFp(11, np.eye(2, dtype=np.int64) * pow(w, 2, 11))
    return affine_group(11, 2, [i, j, scal])


CATALOG: dict[str, dict] = {
    "49-16": {"kind": "gammaL1", "params": {"p": 7, "d": 2, "m": 4, "e": 0, "s": 1}},
    "81-48": {"kind": "gammaL1", "params": {"p": 3, "d": 4, "m": 4, "e": 0, "s": 1}},
    "2401-663": {"kind": "gammaL1", "params": {"p": 7, "d": 4, "m": 10, "e": 5, "s": 1}},
    "121-23": {"kind": "special", "params": {"p": 11, "d": 2}},
}


def catalog(name: str) -> PermGroup:
    if name not in CATALOG:
        raise DescriptorError(f"unknown catalog entry {name!r}; known: {sorted(CATALOG)}")
    entry = CATALOG[name]
    if name == "121-23":
        return _catalog_121_23()
    pr = entry["params"]
    return gammaL1_affine(pr["p"], pr["d"], pr["m"], pr["e"], pr["s"])


# --- descriptors --------------------------------------------------------------------------

KINDS = ("affine-matrix", "gammaL1", "family-G", "family-H", "rank4-gammaL1", "catalog", "permutations")

_REQUIRED = {
    "affine-matrix": ("p", "d", "generators"),
    "gammaL1": ("p", "d", "m", "e", "s"),
    "family-G": ("m",),
    "family-H": ("m",),
    "rank4-gammaL1": ("p", "d", "m1", "e", "s"),
    "catalog": ("name",),
    "permutations": ("degree", "generators"),
}


@dataclass
class GroupDescriptor:
    """Serializable recipe for a group: a family name with parameters."""

    kind: str
    params: dict
    metadata: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise DescriptorError(f"unknown kind {self.kind!r}; expected one of {list(KINDS)}")
        missing = [k for k in _REQUIRED[self.kind] if k not in self.params]
        if missing:
            raise DescriptorError(f"{self.kind} descriptor lacks parameters {missing}")
        pr = self.params
        if self.kind == "gammaL1":
            StandardForm(*(int(pr[k]) for k in ("p", "d", "m", "e", "s"))).validate()
        elif self.kind == "rank4-gammaL1":
            rep = two_orbit_conditions(int(pr["p"]), int(pr["d"]), int(pr["m1"]), 3, int(pr["e"]), int(pr["s"]))
            if not rep.ok:
                raise ConditionError("; ".join(rep.messages))
        elif self.kind in ("family-G", "family-H") and int(pr["m"]) < 2:
            raise DescriptorError(f"{self.kind} needs m >= 2")
        elif self.kind == "catalog" and pr["name"] not in CATALOG:
            raise DescriptorError(f"unknown catalog entry {pr['name']!r}")

    def build(self, degree_bound: int = DEFAULT_DEGREE_BOUND) -> PermGroup:
        self.validate()
        pr = self.params
        k = self.kind
        if k == "affine-matrix":
            p, d = int(pr["p"]), int(pr["d"])
            mats = [MatrixGFp(p, np.array(g)) for g in pr["generators"]]
            return affine_group(p, d, mats, degree_bound=degree_bound)
        if k == "gammaL1":
            return gammaL1_affine(*(int(pr[x]) for x in ("p", "d", "m", "e", "s")), degree_bound=degree_bound)
        if k == "family-G":
            return family_G(int(pr["m"]), degree_bound)
        if k == "family-H":
            return family_H(int(pr["m"]), degree_bound)
        if k == "rank4-gammaL1":
            return rank4_gammaL1(*(int(pr[x]) for x in ("p", "d", "m1", "e", "s")), degree_bound=degree_bound)
        if k == "catalog":
            return catalog(pr["name"])
        n = int(pr["degree"])
        _check_degree(n, degree_bound)
        try:
            gens = [Permutation(g) for g in pr["generators"]]
        except ValueError as exc:
            raise DescriptorError(str(exc)) from exc
        return PermGroup(gens, n)

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": self.params, "metadata": self.metadata}

    @classmethod
    def from_json(cls, data: dict) -> GroupDescriptor:
        if not isinstance(data, dict) or "kind" not in data:
            raise DescriptorError("descriptor must be an object with a 'kind' field")
        return cls(data["kind"], dict(data.get("params", {})), dict(data.get("metadata", {})))

    def digest(self) -> str:
        blob = json.dumps({"kind": self.kind, "params": self.params}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()


def family_descriptor(family: str, **params) -> GroupDescriptor:
    """CLI family names (G, H, gammal1, rank4-gammal1, affine, catalog) to descriptors."""
    table = {
        "g": "family-G",
        "h": "family-H",
        "gammal1": "gammaL1",
        "rank4-gammal1": "rank4-gammaL1",
        "catalog": "catalog",
    }
    kind = table.get(family.lower())
    if kind is None:
        raise DescriptorError(f"unknown family {family!r}; expected one of {sorted(table)}")
    desc = GroupDescriptor(kind, {k: v for k, v in params.items() if v is not None})
    if kind in ("family-G", "family-H") and "m" in desc.params:
        desc.metadata["suborbit_representatives"] = family_labels(kind, int(desc.params["m"]))
    return desc
