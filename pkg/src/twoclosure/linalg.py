"""Dense matrices over GF(p) and their action on the points of GF(p)^d.

Vectors are rows and matrices act on the right, v -> vA.  Point index of a
vector is sum(v_i * p^i), so coordinate 0 is least significant and index 0
is the zero vector.  In a tensor product X (x) Y the basis vector x_i (x) y_j
sits at coordinate i*dim(Y) + j, which is exactly what :func:`kron` produces.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gfield import FieldSpec
from .permgrp import Permutation


class SingularMatrixError(ValueError):
    pass


class CharacteristicError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MatrixGFp:
    p: int
    a: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=np.int64) % self.p
        if a.ndim != 2:
            raise ValueError("matrix must be two-dimensional")
        a.setflags(write=False)
        object.__setattr__(self, "a", a)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def entries(self) -> list[int]:
        return self.a.ravel().tolist()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MatrixGFp) and mat_eq(self, other)

    def __hash__(self) -> int:
        return hash((self.p, self.a.shape, self.a.tobytes()))

    def __matmul__(self, other: MatrixGFp) -> MatrixGFp:
        return mat_mul(self, other)

    def __repr__(self) -> str:
        return f"MatrixGFp(p={self.p}, {self.a.tolist()})"

    def to_json(self) -> dict:
        return {"p": self.p, "rows": self.rows, "cols": self.cols, "entries": self.entries}

    @classmethod
    def from_json(cls, data: dict) -> MatrixGFp:
        rows, cols = int(data["rows"]), int(data["cols"])
        return cls(int(data["p"]), np.array(data["entries"]).reshape(rows, cols))


def identity(p: int, n: int) -> MatrixGFp:
    return MatrixGFp(p, np.eye(n, dtype=np.int64))


def _same_p(A: MatrixGFp, B: MatrixGFp) -> None:
    if A.p != B.p:
        raise CharacteristicError(f"characteristics {A.p} and {B.p} differ")


def mat_mul(A: MatrixGFp, B: MatrixGFp) -> MatrixGFp:
    _same_p(A, B)
    if A.cols != B.rows:
        raise ValueError("non-conforming shapes")
    return MatrixGFp(A.p, (A.a @ B.a) % A.p)


def mat_eq(A: MatrixGFp, B: MatrixGFp) -> bool:
    return A.p == B.p and A.a.shape == B.a.shape and bool((A.a == B.a).all())


def _row_reduce(a: np.ndarray, p: int):
    """Gauss-Jordan over GF(p); returns (reduced, pivot columns, det factor)."""
    a = a.copy() % p
    rows, cols = a.shape
    pivots = []
    det = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if not len(nz):
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
            det = -det
        piv = int(a[r, c])
        det = det * piv % p
        a[r] = a[r] * pow(piv, -1, p) % p
        others = np.nonzero(a[:, c])[0]
        for i in others:
            if i != r:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots, det % p


def det(A: MatrixGFp) -> int:
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    _, pivots, d = _row_reduce(A.a, A.p)
    return d if len(pivots) == A.rows else 0


def rank(A: MatrixGFp) -> int:
    return len(_row_reduce(A.a, A.p)[1])


def mat_inv(A: MatrixGFp) -> MatrixGFp:
    n = A.rows
    if A.cols != n:
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([A.a, np.eye(n, dtype=np.int64)], axis=1)
    red, pivots, _ = _row_reduce(aug, A.p)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return MatrixGFp(A.p, red[:, n:])


def is_invertible(A: MatrixGFp) -> bool:
    return A.rows == A.cols and rank(A) == A.rows


def kron(A: MatrixGFp, B: MatrixGFp) -> MatrixGFp:
    _same_p(A, B)
    return MatrixGFp(A.p, np.kron(A.a, B.a) % A.p)


def direct_sum(A: MatrixGFp, B: MatrixGFp) -> MatrixGFp:
    _same_p(A, B)
    out = np.zeros((A.rows + B.rows, A.cols + B.cols), dtype=np.int64)
    out[: A.rows, : A.cols] = A.a
    out[A.rows :, A.cols :] = B.a
    return MatrixGFp(A.p, out)


# --- points ------------------------------------------------------------------

class VectorIndexMap:
    """Bijection between {0..p^d-1} and GF(p)^d, coordinate 0 least significant."""

    def __init__(self, p: int, d: int):
        self.p, self.d, self.n = p, d, p**d
        self.weights = p ** np.arange(d, dtype=np.int64)
        idx = np.arange(self.n, dtype=np.int64)
        self.vectors = (idx[:, None] // self.weights[None, :]) % p

    def vec(self, index: int) -> np.ndarray:
        return self.vectors[index].copy()

    def index(self, v) -> int:
        return int((np.asarray(v, dtype=np.int64) % self.p) @ self.weights)

    def indices(self, vs: np.ndarray) -> np.ndarray:
        return (vs % self.p) @ self.weights


_MAPS: dict[tuple[int, int], VectorIndexMap] = {}


def vector_index_map(p: int, d: int) -> VectorIndexMap:
    key = (p, d)
    if key not in _MAPS:
        _MAPS[key] = VectorIndexMap(p, d)
    return _MAPS[key]


def matrix_permutation(A: MatrixGFp) -> Permutation:
    """The point permutation v -> vA of GF(p)^d."""
    if not is_invertible(A):
        raise SingularMatrixError("matrix is singular")
    vim = vector_index_map(A.p, A.rows)
    return Permutation(vim.indices(vim.vectors @ A.a), check=False)


def translation_permutation(p: int, d: int, v) -> Permutation:
    vim = vector_index_map(p, d)
    return Permutation(vim.indices(vim.vectors + np.asarray(v, dtype=np.int64)[None, :]), check=False)


def affine_permutation(A: MatrixGFp, v) -> Permutation:
    """x -> xA + v."""
    vim = vector_index_map(A.p, A.rows)
    return Permutation(
        vim.indices(vim.vectors @ A.a + np.asarray(v, dtype=np.int64)[None, :]), check=False
    )


# --- GF(q) matrices blown up to GF(p) ----------------------------------------

@dataclass(frozen=True, eq=False)
class FieldMatrix:
    """Matrix over GF(q), entries stored as field indices."""

    field: FieldSpec
    idx: np.ndarray

    def __post_init__(self):
        idx = np.array(self.idx, dtype=np.int64)
        if idx.ndim != 2:
            raise ValueError("matrix must be two-dimensional")
        if idx.min(initial=0) < 0 or idx.max(initial=0) >= self.field.card:
            raise ValueError("entry is not a field index")
        idx.setflags(write=False)
        object.__setattr__(self, "idx", idx)

    @classmethod
    def from_elements(cls, rows) -> FieldMatrix:
        spec = rows[0][0].spec
        return cls(spec, np.array([[e.index for e in row] for row in rows]))

    @classmethod
    def scalar(cls, field: FieldSpec, k: int, a_index: int) -> FieldMatrix:
        return cls(field, np.eye(k, dtype=np.int64) * a_index)

    @property
    def shape(self) -> tuple[int, int]:
        return self.idx.shape

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "entries": self.idx.tolist()}


def regular_rep(field: FieldSpec, a_index: int) -> np.ndarray:
    """e x e GF(p)-matrix of x -> x*a in the power basis (rows = images of w^i)."""
    e = field.d
    vim = vector_index_map(field.p, e)
    rows = [vim.vec(field.mul_index(int(field.exp[i]), a_index)) for i in range(e)]
    return np.array(rows, dtype=np.int64)


def frobenius_matrix(field: FieldSpec, s: int = 1) -> MatrixGFp:
    """GF(p)-matrix of x -> x^(p^s) on GF(q) in the power basis."""
    e = field.d
    vim = vector_index_map(field.p, e)
    q1 = field.card - 1
    rows = []
    for i in range(e):
        k = i * field.p ** (s % e) % q1
        rows.append(vim.vec(int(field.exp[k])))
    return MatrixGFp(field.p, np.array(rows))


def _mat_field_rank(M: FieldMatrix) -> int:
    # rank over GF(q) via Gaussian elimination on indices
    f = M.field
    a = [[int(x) for x in row] for row in M.idx]
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = int(f.exp[(-int(f.log[a[r][c]])) % (f.card - 1)])
        a[r] = [f.mul_index(x, inv) for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                neg = f.mul_index(a[i][c], _neg_index(f, 1))
                a[i] = [f.add_index(x, f.mul_index(neg, y)) for x, y in zip(a[i], a[r])]
        r += 1
    return r


def _neg_index(f: FieldSpec, a: int) -> int:
    p = f.p
    out, place = 0, 1
    for _ in range(f.d):
        out += ((-(a % p)) % p) * place
        a //= p
        place *= p
    return out


def blowup(M: FieldMatrix) -> MatrixGFp:
    """GF(p)-matrix of the GF(q)-linear map v -> vM on GF(q)^k = GF(p)^(ek)."""
    rows, cols = M.shape
    if rows != cols or _mat_field_rank(M) != rows:
        raise SingularMatrixError("matrix is singular over GF(q)")
    e = M.field.d
    out = np.zeros((e * rows, e * cols), dtype=np.int64)
    for i in range(rows):
        for j in range(cols):
            out[e * i : e * (i + 1), e * j : e * (j + 1)] = regular_rep(M.field, int(M.idx[i, j]))
    return MatrixGFp(M.field.p, out)


def semilinear_matrix(M: FieldMatrix, s: int) -> MatrixGFp:
    """GF(p)-matrix of v -> (v^(alpha^s)) M, alpha the Frobenius of GF(q)."""
    k = M.shape[0]
    F = frobenius_matrix(M.field, s)
    blk = MatrixGFp(M.field.p, np.kron(np.eye(k, dtype=np.int64), F.a))
    return mat_mul(blk, blowup(M))


def semilinear_blowup(M: FieldMatrix, s: int) -> Permutation:
    """Point permutation of v -> (v^(alpha^s)) M on the p^(ek) points."""
    return matrix_permutation(semilinear_matrix(M, s))


def field_kron(A: FieldMatrix, B: FieldMatrix) -> FieldMatrix:
    """Kronecker product over GF(q); A's index slow, B's fast."""
    if A.field != B.field:
        raise CharacteristicError("factors live over different fields")
    f = A.field
    ra, ca = A.shape
    rb, cb = B.shape
    out = np.zeros((ra * rb, ca * cb), dtype=np.int64)
    for i in range(ra):
        for j in range(ca):
            a = int(A.idx[i, j])
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = f.mul_index(a, int(B.idx[k, l]))
    return FieldMatrix(f, out)
