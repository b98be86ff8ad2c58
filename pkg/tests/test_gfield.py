from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import divisors

from twoclosure.gfield import (
    FieldError,
    discrete_log,
    finv,
    fmul,
    fpow,
    frobenius,
    lex_least_primitive_poly,
    make_field,
)


def _brute_primitive_polys(p: int, d: int):
    """All primitive monic degree-d polys as (c0..c_{d-1}, 1), in lex order of (c_{d-1},...,c0)."""
    out = []
    for rev in itertools.product(range(p), repeat=d):
        coeffs = tuple(reversed(rev)) + (1,)
        if coeffs[0] == 0:
            continue
        # order of x modulo the polynomial, by repeated multiplication
        cur = [0] * d
        cur[0] = 1
        order = None
        for k in range(1, p**d):
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * m) % p for c, m in zip(cur, coeffs[:d])]
            if cur == [1] + [0] * (d - 1):
                order = k
                break
        if order == p**d - 1:
            out.append(coeffs)
    return out


@pytest.mark.parametrize("p,d", [(2, 2), (3, 2), (2, 3), (5, 2), (3, 3)])
def test_modulus_is_lex_least_primitive(p, d):
    assert lex_least_primitive_poly(p, d) == _brute_primitive_polys(p, d)[0]


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 23])
def test_prime_field_uses_least_primitive_root(p):
    least = next(g for g in range(2, p) if len({pow(g, k, p) for k in range(p - 1)}) == p - 1)
    assert make_field(p, 1).omega().coeffs == (least,)


def test_modulus_examples():
    assert make_field(2, 2).modulus == (1, 1, 1)
    assert make_field(3, 2).modulus == (2, 1, 1)
    f7 = make_field(7, 1)
    assert f7.omega().coeffs == (3,)


def test_field_errors():
    with pytest.raises(FieldError):
        make_field(4, 1)
    with pytest.raises(FieldError):
        make_field(2, 30)
    with pytest.raises(ZeroDivisionError):
        finv(make_field(3, 2).zero())
    with pytest.raises(FieldError):
        discrete_log(make_field(3, 2).zero())
    with pytest.raises(FieldError):
        make_field(3, 2).one() + make_field(3, 3).one()


def test_gf4_arithmetic():
    f = make_field(2, 2)
    w = f.omega()
    assert w * w == w + f.one()
    assert fpow(w, 3) == f.one()
    assert frobenius(w, 1) == w + f.one()


def test_gf9_inverse_and_log():
    f = make_field(3, 2)
    w = f.omega()
    assert finv(w) == fpow(w, 7)
    k = discrete_log(w + f.one())
    assert fpow(w, k) == w + f.one()
    assert discrete_log(w) == 1 and discrete_log(f.one()) == 0


def test_frobenius_identities():
    f = make_field(2, 3)
    w = f.omega()
    assert frobenius(w, 3) == w
    for a in f.elements():
        assert frobenius(a, 0) == a


@pytest.mark.parametrize("p,d", [(2, 4), (3, 2), (3, 4), (5, 2), (7, 2)])
def test_omega_has_full_order(p, d):
    f = make_field(p, d)
    w = f.omega()
    n = p**d - 1
    assert fpow(w, n) == f.one()
    for k in divisors(n)[:-1]:
        assert fpow(w, k) != f.one()


@pytest.mark.parametrize("p,d", [(2, 2), (3, 2), (2, 3), (3, 3), (3, 4)])
def test_frobenius_is_automorphism_exhaustive(p, d):
    f = make_field(p, d)
    els = f.elements()
    for a in els:
        for b in els:
            assert frobenius(a * b, 1) == frobenius(a, 1) * frobenius(b, 1)
            assert frobenius(a + b, 1) == frobenius(a, 1) + frobenius(b, 1)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6560), st.integers(1, 6560))
def test_log_is_homomorphism(i, j):
    f = make_field(3, 8)
    a, b = f.from_index(i), f.from_index(j)
    assert discrete_log(fmul(a, b)) == (discrete_log(a) + discrete_log(b)) % (f.card - 1)
    assert fmul(a, finv(a)) == f.one()


def test_field_json_round_trip():
    f = make_field(5, 3)
    data = f.to_json()
    assert data["modulus"] == list(f.modulus)
    assert type(f).from_json(data) == f
    with pytest.raises(FieldError):
        type(f).from_json({"p": 5, "d": 3, "modulus": [1, 1, 1, 1]})
