"""Arithmetic in GF(p^d) over a fixed primitive modulus.

Elements are coefficient vectors over GF(p) in the power basis
1, w, ..., w^(d-1), where w is the class of x modulo the chosen polynomial.
Every element also has an integer *index* sum(c_i * p^i), which is the same
encoding :mod:`twoclosure.linalg` uses for points of GF(p)^d.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np
from sympy import isprime, primefactors

DEFAULT_MAX_CARD = 2**20


class FieldError(ValueError):
    pass


def _poly_mulmod(a: list[int], b: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    d = len(mod) - 1
    prod = [0] * (2 * d - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # mod is monic: x^d = -(c_0 + ... + c_{d-1} x^{d-1})
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for i in range(d):
                prod[k - d + i] = (prod[k - d + i] - c * mod[i]) % p
    return prod[:d]


def _poly_powmod(base: list[int], e: int, mod: tuple[int, ...], p: int) -> list[int]:
    d = len(mod) - 1
    result = [1] + [0] * (d - 1)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def is_primitive_poly(mod: tuple[int, ...], p: int) -> bool:
    """True iff the monic ``mod`` (constant term first) is primitive over GF(p).

    x has order exactly p^d - 1 modulo ``mod``; this forces irreducibility,
    since a reducible modulus has fewer than p^d - 1 units.
    """
    d = len(mod) - 1
    if mod[-1] != 1 or mod[0] % p == 0:
        return False
    if d == 1:
        x = [(-mod[0]) % p]
    else:
        x = [0, 1] + [0] * (d - 2)
    one = [1] + [0] * (d - 1)
    order = p**d - 1
    if _poly_powmod(x, order, mod, p) != one:
        return False
    return all(_poly_powmod(x, order // r, mod, p) != one for r in primefactors(order))


def lex_least_primitive_poly(p: int, d: int) -> tuple[int, ...]:
    """Lexicographically least primitive monic polynomial of degree ``d``.

    Candidates are ordered by the tuple (c_{d-1}, ..., c_1, c_0).  For d = 1
    the modulus is x - g with g the least primitive root mod p, so that the
    prime field is generated by its smallest primitive root.
    """
    if d == 1:
        for g in range(1, p):
            mod = ((-g) % p, 1)
            if is_primitive_poly(mod, p):
                return mod
    for high_first in itertools.product(range(p), repeat=d):
        mod = tuple(reversed(high_first)) + (1,)
        if is_primitive_poly(mod, p):
            return mod
    raise FieldError(f"no primitive polynomial of degree {d} over GF({p})")  # unreachable


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(p^d) together with its primitive element and log tables."""

    p: int
    d: int
    modulus: tuple[int, ...]
    card: int
    # exp[k] = index of w^k for 0 <= k < card-1; log[index] = k, log[0] = -1
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.d, self.modulus) == (other.p, other.d, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.d, self.modulus))

    # element constructors
    def element(self, coeffs) -> FieldElement:
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) > self.d:
            raise FieldError("too many coefficients")
        return FieldElement(self, coeffs + (0,) * (self.d - len(coeffs)))

    def from_index(self, index: int) -> FieldElement:
        if not 0 <= index < self.card:
            raise FieldError(f"index {index} out of range")
        return FieldElement(self, tuple(_digits(index, self.p, self.d)))

    def zero(self) -> FieldElement:
        return self.from_index(0)

    def one(self) -> FieldElement:
        return self.from_index(1)

    def omega(self) -> FieldElement:
        """The primitive element w (the class of x)."""
        return self.from_index(int(self.exp[1 % (self.card - 1)]))

    def power_of_omega(self, k: int) -> FieldElement:
        return self.from_index(int(self.exp[k % (self.card - 1)]))

    def elements(self) -> list[FieldElement]:
        return [self.from_index(i) for i in range(self.card)]

    def to_json(self) -> dict:
        return {"p": self.p, "d": self.d, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> FieldSpec:
        spec = make_field(int(data["p"]), int(data["d"]))
        if "modulus" in data and tuple(data["modulus"]) != spec.modulus:
            raise FieldError(
                f"modulus {data['modulus']} differs from the canonical {list(spec.modulus)}"
            )
        return spec

    # index-level arithmetic, used by the permutation builders
    def mul_index(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        k = (int(self.log[a]) + int(self.log[b])) % (self.card - 1)
        return int(self.exp[k])

    def add_index(self, a: int, b: int) -> int:
        p = self.p
        out, place = 0, 1
        for _ in range(self.d):
            out += ((a % p + b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return out


def _digits(index: int, p: int, d: int):
    for _ in range(d):
        yield index % p
        index //= p


@functools.lru_cache(maxsize=None)
def _build_field(p: int, d: int, max_card: int) -> FieldSpec:
    if not isprime(p):
        raise FieldError(f"{p} is not prime")
    if d < 1:
        raise FieldError("degree must be positive")
    card = p**d
    if card > max_card:
        raise FieldError(f"GF({p}^{d}) exceeds the bound {max_card}")
    mod = lex_least_primitive_poly(p, d)
    exp = np.empty(card - 1, dtype=np.int64)
    log = np.full(card, -1, dtype=np.int64)
    coeffs = [1] + [0] * (d - 1)
    powers = [p**i for i in range(d)]
    for k in range(card - 1):
        idx = sum(c * w for c, w in zip(coeffs, powers))
        exp[k] = idx
        log[idx] = k
        # multiply by x
        top = coeffs[-1]
        coeffs = [0] + coeffs[:-1]
        if top:
            coeffs = [(c - top * m) % p for c, m in zip(coeffs, mod[:d])]
    exp.setflags(write=False)
    log.setflags(write=False)
    return FieldSpec(p, d, mod, card, exp, log)


def make_field(p: int, d: int, max_card: int = DEFAULT_MAX_CARD) -> FieldSpec:
    """Return GF(p^d) modelled with the lex-least primitive monic polynomial."""
    return _build_field(int(p), int(d), int(max_card))


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __repr__(self) -> str:
        return f"GF({self.spec.p}^{self.spec.d}){list(self.coeffs)}"

    @property
    def index(self) -> int:
        p = self.spec.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: FieldElement) -> None:
        if self.spec != other.spec:
            raise FieldError("operands belong to different fields")

    def __add__(self, other: FieldElement) -> FieldElement:
        return fadd(self, other)

    def __sub__(self, other: FieldElement) -> FieldElement:
        return fadd(self, fneg(other))

    def __neg__(self) -> FieldElement:
        return fneg(self)

    def __mul__(self, other: FieldElement) -> FieldElement:
        return fmul(self, other)

    def __pow__(self, e: int) -> FieldElement:
        return fpow(self, e)


def fadd(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    p = a.spec.p
    return FieldElement(a.spec, tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))


def fneg(a: FieldElement) -> FieldElement:
    p = a.spec.p
    return FieldElement(a.spec, tuple((-x) % p for x in a.coeffs))


def fmul(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    return a.spec.from_index(a.spec.mul_index(a.index, b.index))


def finv(a: FieldElement) -> FieldElement:
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero")
    spec = a.spec
    k = -int(spec.log[a.index]) % (spec.card - 1)
    return spec.from_index(int(spec.exp[k]))


def fpow(a: FieldElement, e: int) -> FieldElement:
    spec = a.spec
    if a.is_zero():
        if e < 0:
            raise ZeroDivisionError("negative power of zero")
        return spec.one() if e == 0 else spec.zero()
    k = int(spec.log[a.index]) * e % (spec.card - 1)
    return spec.from_index(int(spec.exp[k]))


def frobenius(a: FieldElement, s: int = 1) -> FieldElement:
    """a^(p^s)."""
    if s < 0:
        raise FieldError("Frobenius exponent must be non-negative")
    return fpow(a, a.spec.p ** (s % a.spec.d))


def discrete_log(a: FieldElement) -> int:
    if a.is_zero():
        raise FieldError("discrete log of zero")
    return int(a.spec.log[a.index])
