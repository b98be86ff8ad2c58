"""Acceptance suite: one PASS/FAIL line per criterion, built from the CLI verify checks."""

from __future__ import annotations

import random

import pytest
from test_graphauto import _corpus_for_relabeling, brute_aut_count, small_corpus

from twoclosure.cli import Checklist, suite_catalog, suite_families, suite_properties, suite_tables
from twoclosure.graphauto import automorphism_group, canonical_form


def _report(capsys, number: int, title: str, cl: Checklist) -> None:
    failed = [r for r in cl.results if not r.passed]
    status = "PASS" if cl.ok and cl.results else "FAIL"
    with capsys.disabled():
        print(f"\n{status} criterion {number}: {title} ({len(cl.results) - len(failed)}/{len(cl.results)} checks)")
        for r in failed:
            print(f"    failed: {r.name}: {r.detail}")
    assert cl.ok and cl.results, [f"{r.name}: {r.detail}" for r in failed]


def _only(cl: Checklist, prefixes: tuple[str, ...]) -> Checklist:
    out = Checklist()
    out.results = [r for r in cl.results if r.name.startswith(prefixes)]
    return out


@pytest.fixture(scope="module")
def families() -> Checklist:
    cl = Checklist()
    suite_families(cl, include_slow=True)
    return cl


@pytest.mark.slow
def test_criterion_1_family_G(capsys, families):
    cl = _only(families, ("G(2)", "G(3)"))
    _report(capsys, 1, "G(2) and G(3) are rank 4, 2-closed, not digraph automorphism groups, "
                       "with Hamming orbital graphs", cl)


def test_criterion_2_family_H(capsys, families):
    _report(capsys, 2, "H(2) has subdegrees 30,45,180, is 2-closed and not a digraph automorphism group",
            _only(families, ("H(2)",)))


def test_criterion_3_rank4_semilinear(capsys, families):
    _report(capsys, 3, "G(5,2,1,1,1) and G(2,6,1,0,1): isomorphic orbital digraphs, Aut above the closure",
            _only(families, ("G(5^2", "G(2^6")))


@pytest.mark.extended
def test_criterion_4_catalog(capsys):
    cl = Checklist()
    suite_catalog(cl, include_extended=True)
    _report(capsys, 4, "named examples 49-16, 81-48, 121-23 and (extended) 2401-663", cl)


def test_criterion_5_tables(capsys):
    cl = Checklist()
    suite_tables(cl)
    _report(capsys, 5, "rank 3 subdegree formulas swept to 1e8, static records, group cross-checks", cl)


def test_criterion_6_engine_properties(capsys):
    cl = Checklist()
    suite_properties(cl)
    for k, g in enumerate(small_corpus()):
        cl.check(f"graph {k} (n={g.n}) Aut equals brute force",
                 lambda g=g: automorphism_group(g).order() == brute_aut_count(g), "engine property")
    for k, g in enumerate(_corpus_for_relabeling()):
        def relabel(g=g, k=k):
            ref = canonical_form(g).certificate
            rng = random.Random(k)
            for _ in range(100):
                perm = list(range(g.n))
                rng.shuffle(perm)
                if canonical_form(g.relabel(perm)).certificate != ref:
                    return False
            return True

        cl.check(f"graph {k} canonical form stable under 100 relabelings", relabel, "engine property")
    _report(capsys, 6, "orbit-stabilizer, primitivity, closure idempotence, canonical forms, converse sweep", cl)
