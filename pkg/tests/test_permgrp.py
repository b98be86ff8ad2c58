from __future__ import annotations

import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoclosure.constructions import family_G, rank4_gammaL1
from twoclosure.permgrp import (
    DegreeError,
    NotTransitiveError,
    Permutation,
    PermGroup,
    alternating_group,
    closure_with,
    conjugate_group,
    cyclic_group,
    is_primitive_by_blocks,
    symmetric_group,
)


def cyc(n, *cycles):
    return Permutation.from_cycles(n, *cycles)


def _brute_closure(gens, n):
    """All elements of <gens> by breadth-first multiplication (small groups only)."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g.images[list(x)])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def test_permutation_basics():
    a = cyc(4, (0, 1, 2))
    b = cyc(4, (2, 3))
    # right action: (a*b)(x) = b(a(x))
    assert (a * b)(1) == b(a(1))
    assert (a * a.inverse()).is_identity()
    assert a.order() == 3
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_orders():
    assert PermGroup([cyc(5, (0, 1, 2, 3, 4))], 5).order() == 5
    assert PermGroup([cyc(4, (0, 1)), cyc(4, (0, 1, 2, 3))], 4).order() == 24
    assert family_G(2).order() == 81 * 192


def test_degree_mismatch():
    with pytest.raises(DegreeError):
        PermGroup([cyc(4, (0, 1))], 5)


def test_membership():
    g = PermGroup([cyc(3, (0, 1, 2))], 3)
    assert g.contains(Permutation.identity(3))
    assert not g.contains(cyc(3, (0, 1)))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_random_words_are_members(seed):
    rng = random.Random(seed)
    g = family_G(2)
    w = Permutation.identity(81)
    for _ in range(12):
        w = w * rng.choice(g.generators)
    assert g.contains(w)
    h = symmetric_group(81)
    assert not g.contains(h.random_element(rng)) or g.order() == h.order()


@pytest.mark.parametrize("n", [4, 5, 6])
def test_orders_match_brute_force(n):
    rng = random.Random(n)
    for _ in range(4):
        gens = [Permutation(rng.sample(range(n), n)) for _ in range(2)]
        g = PermGroup(gens, n)
        assert g.order() == len(_brute_closure(gens, n))


def test_orbits_and_stabilizers():
    g = PermGroup([cyc(4, (0, 1), (2, 3))], 4)
    assert sorted(g.orbit(0)) == [0, 1]
    assert g.stabilizer(0).order() == 1
    G2 = family_G(2)
    assert sorted(G2.orbit(0)) == list(range(81))
    assert G2.stabilizer(0).order() == 192
    for x in (0, 5, 40, 80):
        assert len(G2.orbit(x)) * G2.stabilizer(x).order() == G2.order()
        assert G2.order() % G2.stabilizer(x).order() == 0


def test_regularity():
    assert PermGroup([cyc(4, (0, 1, 2, 3))], 4).is_regular()
    v4 = PermGroup([cyc(4, (0, 1), (2, 3)), cyc(4, (0, 2), (1, 3))], 4)
    assert v4.is_regular()
    s3 = symmetric_group(3)
    assert s3.is_transitive() and not s3.is_regular()


def test_primitivity():
    assert not cyclic_group(6).is_primitive()
    assert cyclic_group(5).is_primitive()
    assert rank4_gammaL1(5, 2, 1, 1, 1).is_primitive()
    with pytest.raises(NotTransitiveError):
        PermGroup([cyc(4, (0, 1))], 4).is_primitive()


def test_higman_agrees_with_blocks():
    rng = random.Random(7)
    groups = [cyclic_group(n) for n in (4, 6, 7, 9)] + [symmetric_group(5), alternating_group(6)]
    groups.append(PermGroup([cyc(8, (0, 1, 2, 3), (4, 5, 6, 7)), cyc(8, (0, 4), (1, 5), (2, 6), (3, 7))], 8))
    for _ in range(10):
        n = rng.randint(4, 9)
        g = PermGroup([Permutation(rng.sample(range(n), n)) for _ in range(2)], n)
        groups.append(g)
    for g in groups:
        if g.is_transitive():
            assert g.is_primitive() == is_primitive_by_blocks(g)


def test_conjugate_and_closure():
    g = PermGroup([cyc(5, (0, 1, 2, 3, 4))], 5)
    assert conjugate_group(g, Permutation.identity(5)).order() == 5
    assert closure_with(g, [g.generators[0] ** 2]).order() == 5
    assert closure_with(g, [cyc(5, (1, 4), (2, 3))]).order() == 10
    with pytest.raises(DegreeError):
        closure_with(g, [Permutation.identity(6)])


def test_base_independence():
    g = family_G(2)
    for prefix in ([5], [80, 3], [40, 41, 42]):
        assert g.with_base(prefix).order() == g.order()
        assert g.with_base(prefix).base[: len(prefix)] == prefix


def test_non_member_sift_residue():
    g = PermGroup([cyc(5, (0, 1, 2, 3, 4))], 5)
    h = cyc(5, (0, 1))
    assert not g.sift(h).is_identity()


def test_json_round_trip():
    g = family_G(2)
    h = PermGroup.from_json(g.to_json())
    assert h.order() == g.order() and h.degree == 81


def test_small_symmetric_alternating():
    assert symmetric_group(1).order() == 1
    assert alternating_group(2).order() == 1
    assert alternating_group(5).order() == 60
    for n in (3, 4):
        assert symmetric_group(n).order() == len(list(itertools.permutations(range(n))))


def test_pointwise_stabilizer():
    g = symmetric_group(6)
    st_ = g.pointwise_stabilizer([0, 1, 2])
    assert st_.order() == 6
    imgs = np.array([h.images for h in st_.generators]) if st_.generators else np.zeros((0, 6))
    assert (imgs[:, :3] == [0, 1, 2]).all()
