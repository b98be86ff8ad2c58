from __future__ import annotations

import pytest

from twoclosure.closure import (
    EXHAUSTIVE,
    RANK4,
    PreconditionError,
    candidate_index_sets,
    closure_report,
    is_digraph_autgroup,
    is_two_closed,
    two_closure,
)
from twoclosure.constructions import catalog, family_G, gammaL1_affine, rank4_gammaL1
from twoclosure.graphauto import ColoredDigraph, automorphism_group
from twoclosure.orbitals import decompose, orbital_digraph
from twoclosure.permgrp import NotTransitiveError, Permutation, PermGroup, alternating_group, cyclic_group, symmetric_group

V4 = PermGroup([Permutation([1, 0, 3, 2]), Permutation([2, 3, 0, 1])], 4)


def test_regular_groups_are_two_closed():
    assert two_closure(V4).order() == 4
    for n in (5, 6, 8):
        assert is_two_closed(cyclic_group(n))


def test_two_transitive_closure_is_symmetric():
    assert two_closure(alternating_group(4)).order() == 24
    assert not is_two_closed(alternating_group(4))
    assert two_closure(symmetric_group(6)).order() == 720


def test_v4_not_a_digraph_autgroup():
    for mode in (RANK4, EXHAUSTIVE):
        assert not is_digraph_autgroup(V4, mode).is_autgroup


def test_not_two_closed_short_circuits():
    d = is_digraph_autgroup(alternating_group(4), EXHAUSTIVE)
    assert not d.is_autgroup and d.tested == []


def test_rank4_mode_requires_rank_4():
    with pytest.raises(PreconditionError):
        is_digraph_autgroup(symmetric_group(5), RANK4)


def test_exhaustive_symmetric_group_via_complete_graph():
    d = is_digraph_autgroup(symmetric_group(5), EXHAUSTIVE)
    assert d.is_autgroup and d.witness == (1,)


def test_candidate_sets_one_per_complement_pair():
    dec = decompose(family_G(2))
    sets = candidate_index_sets(dec, EXHAUSTIVE)
    # subsets containing 1: {1}, {1,2}, {1,3}, {1,2,3}; complements cover the rest
    assert sorted(sets) == [(1,), (1, 2), (1, 2, 3), (1, 3)]
    assert candidate_index_sets(dec, RANK4) == [(1,), (2,), (3,)]


def test_intransitive_rejected():
    with pytest.raises(NotTransitiveError):
        two_closure(PermGroup([Permutation([1, 0, 2])], 3))


def test_positive_digraph_autgroup():
    # the directed 5-cycle has automorphism group exactly C5
    d = is_digraph_autgroup(cyclic_group(5), EXHAUSTIVE)
    assert d.is_autgroup


def test_catalog_49_16_third_graph():
    g = catalog("49-16")
    assert not is_digraph_autgroup(g, RANK4).is_autgroup
    dec = decompose(g)
    aut = automorphism_group(ColoredDigraph.from_digraph(orbital_digraph(g, dec, 3)), known=g)
    ref = gammaL1_affine(7, 2, 2, 0, 1)
    assert aut.order() == 49 * 48 and aut.contains_group(ref)


@pytest.mark.parametrize(
    "g",
    [cyclic_group(6), alternating_group(4), rank4_gammaL1(5, 2, 1, 1, 1), catalog("81-48"), family_G(2)],
    ids=["C6", "A4", "G25", "81-48", "G(2)"],
)
def test_closure_properties(g):
    dec = decompose(g)
    clo = two_closure(g, dec)
    assert clo.contains_group(g)
    dec2 = decompose(clo)
    assert [sorted(s) for s in dec2.suborbits] == [sorted(s) for s in dec.suborbits]
    assert two_closure(clo, dec2).order() == clo.order()
    for i in range(1, dec.rank):
        aut = automorphism_group(ColoredDigraph.from_digraph(orbital_digraph(g, dec, i)), known=clo)
        assert aut.contains_group(clo)


def test_report_invariants():
    report, clo, dec = closure_report(family_G(2), check_autgroup=True)
    assert report.closure_order >= report.input_order
    assert report.is_two_closed == (report.closure_order == report.input_order)
    assert all(o % report.closure_order == 0 for o in report.orbital_aut_orders)
    assert report.digraph_autgroup is False and report.mode == RANK4
    assert report.to_json()["subdegrees"] == [1, 16, 16, 48]


def test_rank4_shortcut_aut_has_rank_3():
    # each orbital graph of G(2) has a rank 3 automorphism group with suborbits {0}, B_i, rest
    g = family_G(2)
    dec = decompose(g)
    for i in range(1, 4):
        aut = automorphism_group(ColoredDigraph.from_digraph(orbital_digraph(g, dec, i)), known=g)
        da = decompose(aut)
        assert da.rank == 3
        assert sorted(dec.suborbits[i]) in [sorted(s) for s in da.suborbits]
