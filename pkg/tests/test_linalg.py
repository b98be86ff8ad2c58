from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoclosure.gfield import make_field
from twoclosure.linalg import (
    CharacteristicError,
    FieldMatrix,
    MatrixGFp,
    SingularMatrixError,
    blowup,
    det,
    direct_sum,
    identity,
    is_invertible,
    kron,
    mat_inv,
    mat_mul,
    matrix_permutation,
    semilinear_blowup,
    vector_index_map,
)
from twoclosure.permgrp import Permutation


def _random_invertible(rng, p, n):
    while True:
        a = MatrixGFp(p, rng.integers(0, p, (n, n)))
        if is_invertible(a):
            return a


def test_basic_matrix_ops():
    a = MatrixGFp(3, [[1, 1], [0, 1]])
    assert mat_inv(a) == MatrixGFp(3, [[1, 2], [0, 1]])
    assert mat_mul(identity(3, 2), a) == a
    rng = np.random.default_rng(1)
    for _ in range(20):
        m = _random_invertible(rng, 5, 3)
        assert m @ mat_inv(m) == identity(5, 3)
    with pytest.raises(SingularMatrixError):
        mat_inv(MatrixGFp(3, [[1, 2], [2, 1]]))
    with pytest.raises(CharacteristicError):
        kron(identity(3, 2), identity(5, 2))


def test_kron_conventions():
    b = MatrixGFp(3, [[1, 2], [0, 1]])
    i2 = identity(3, 2)
    assert kron(i2, b) == direct_sum(b, b)
    swap = MatrixGFp(3, [[0, 1], [1, 0]])
    k = kron(swap, identity(3, 2))
    vim = vector_index_map(3, 4)
    # basis vector x_i (x) y_j sits at coordinate i*2 + j
    for i in range(2):
        for j in range(2):
            v = np.zeros(4, dtype=np.int64)
            v[i * 2 + j] = 1
            img = (v @ k.a) % 3
            w = np.zeros(4, dtype=np.int64)
            w[(1 - i) * 2 + j] = 1
            assert (img == w).all()
    # all nine vectors of the span of x_1 (x) y_j map into the span of x_0 (x) y_j
    perm = matrix_permutation(k)
    for c0 in range(3):
        for c1 in range(3):
            src = vim.index([0, 0, c0, c1])
            assert perm(src) == vim.index([c0, c1, 0, 0])


def test_direct_sum_and_det():
    rng = np.random.default_rng(2)
    for _ in range(10):
        a, b = _random_invertible(rng, 3, 2), _random_invertible(rng, 3, 3)
        s = direct_sum(a, b)
        assert det(s) == det(a) * det(b) % 3
        u = np.array([1, 2, 0, 0, 0])
        assert ((u @ s.a) % 3)[:2].tolist() == ((u[:2] @ a.a) % 3).tolist()
        assert ((u @ s.a) % 3)[2:].tolist() == [0, 0, 0]
    assert direct_sum(identity(3, 2), identity(3, 2)) == identity(3, 4)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_kron_mixed_product(seed):
    rng = np.random.default_rng(seed)
    a, c = _random_invertible(rng, 3, 2), _random_invertible(rng, 3, 2)
    b, d = _random_invertible(rng, 3, 3), _random_invertible(rng, 3, 3)
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)
    assert is_invertible(kron(a, b))


def test_vector_index_map_round_trip():
    for p, d in ((2, 8), (3, 4), (7, 2), (5, 5)):
        vim = vector_index_map(p, d)
        idx = np.arange(p**d)
        assert (vim.indices(vim.vectors) == idx).all()
        assert vim.index(vim.vec(0)) == 0 and not vim.vec(0).any()


def test_blowup_examples():
    f = make_field(2, 2)
    w = int(f.exp[1])
    assert blowup(FieldMatrix.scalar(f, 2, 1)) == identity(2, 4)
    assert blowup(FieldMatrix.scalar(f, 1, w)) == MatrixGFp(2, [[0, 1], [1, 1]])
    with pytest.raises(SingularMatrixError):
        blowup(FieldMatrix(f, [[1, 1], [1, 1]]))


def _field_mat_mul(f, a, b):
    n = a.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = f.add_index(acc, f.mul_index(int(a.idx[i, k]), int(b.idx[k, j])))
            out[i, j] = acc
    return FieldMatrix(f, out)


def test_blowup_is_homomorphism():
    f = make_field(2, 2)
    rng = np.random.default_rng(3)
    done = 0
    while done < 25:
        a = FieldMatrix(f, rng.integers(0, 4, (2, 2)))
        b = FieldMatrix(f, rng.integers(0, 4, (2, 2)))
        try:
            ba, bb = blowup(a), blowup(b)
        except SingularMatrixError:
            continue
        assert blowup(_field_mat_mul(f, a, b)) == ba @ bb
        done += 1


def test_scalar_blowup_group_is_cyclic_of_order_q_minus_1():
    f = make_field(3, 2)
    g = blowup(FieldMatrix.scalar(f, 1, int(f.exp[1])))
    powers, cur = [], identity(3, 2)
    for _ in range(8):
        cur = cur @ g
        powers.append(cur)
    assert powers[-1] == identity(3, 2)
    assert all(x != identity(3, 2) for x in powers[:-1])


def test_semilinear_blowup():
    f4 = make_field(2, 2)
    i2 = FieldMatrix.scalar(f4, 2, 1)
    fr = semilinear_blowup(i2, 1)
    assert (fr * fr).is_identity() and not fr.is_identity()
    m = FieldMatrix(f4, [[int(f4.exp[1]), 0], [1, 1]])
    assert semilinear_blowup(m, 0) == matrix_permutation(blowup(m))
    # on GF(9): (w, 1) twice is v -> v^9 w^4 = v w^4
    f9 = make_field(3, 2)
    w = int(f9.exp[1])
    g = semilinear_blowup(FieldMatrix.scalar(f9, 1, w), 1)
    w4 = matrix_permutation(blowup(FieldMatrix.scalar(f9, 1, int(f9.exp[4]))))
    assert g * g == w4


def test_semilinear_composition_rule():
    # (M, s)(N, t) = (M^(a^t) N, s + t) on GF(4)^2
    f = make_field(2, 2)
    m = FieldMatrix(f, [[int(f.exp[1]), 1], [0, 1]])
    n = FieldMatrix(f, [[1, 0], [int(f.exp[2]), int(f.exp[1])]])
    m_frob = FieldMatrix(f, [[int(f.exp[(f.log[x] * 2) % 3]) if x else 0 for x in row] for row in m.idx])
    lhs = semilinear_blowup(m, 1) * semilinear_blowup(n, 1)
    rhs = semilinear_blowup(_field_mat_mul(f, m_frob, n), 0)
    assert lhs == rhs


def test_matrix_json_round_trip():
    a = MatrixGFp(5, [[1, 2, 3], [0, 1, 4], [0, 0, 1]])
    assert MatrixGFp.from_json(a.to_json()) == a
    assert isinstance(matrix_permutation(a), Permutation)
