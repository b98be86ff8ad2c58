"""2-closure, 2-closedness and the automorphism-group-of-a-digraph decision."""
from __future__ import annotations

import itertools
import logging
from dataclasses import asdict, dataclass, field

import numpy as np

from .graphauto import ColoredDigraph, automorphism_group, find_extra_automorphism
from .orbitals import (
    Digraph,
    OrbitalDecomposition,
    decompose,
    generalized_orbital_digraph,
    orbital_coloring,
)
from .permgrp import NotTransitiveError, PermGroup

logger = logging.getLogger(__name__)

RANK4 = "rank4-shortcut"
EXHAUSTIVE = "exhaustive"


class PreconditionError(ValueError):
    pass


def _require_transitive(g: PermGroup) -> None:
    if not g.is_transitive():
        raise NotTransitiveError("only transitive groups are supported")


def orbital_colored_digraph(dec: OrbitalDecomposition) -> ColoredDigraph:
    """Total pair colouring by orbitals; the diagonal carries colour 1."""
    n = dec.degree
    return ColoredDigraph(n, np.zeros(n, dtype=np.int64), orbital_coloring(dec))


def two_closure(g: PermGroup, dec: OrbitalDecomposition | None = None) -> PermGroup:
    """G^(2): the automorphism group of the orbital colouring, seeded with G."""
    _require_transitive(g)
    dec = dec or decompose(g)
    return automorphism_group(orbital_colored_digraph(dec), known=g)


def is_two_closed(g: PermGroup, dec: OrbitalDecomposition | None = None) -> bool:
    _require_transitive(g)
    dec = dec or decompose(g)
    return find_extra_automorphism(orbital_colored_digraph(dec), g) is None


def candidate_index_sets(dec: OrbitalDecomposition, mode: str) -> list[tuple[int, ...]]:
    """Arc sets to test, one per complementary pair (always the one containing suborbit 1)."""
    r = dec.rank
    if mode == RANK4:
        if r != 4:
            raise PreconditionError(f"the rank-4 shortcut needs rank 4, got rank {r}")
        return [(1,), (2,), (3,)]
    if mode != EXHAUSTIVE:
        raise ValueError(f"unknown mode {mode!r}")
    rest = list(range(2, r))
    out = []
    for k in range(len(rest) + 1):
        for combo in itertools.combinations(rest, k):
            out.append((1,) + combo)
    return out


@dataclass
class AutgroupDecision:
    is_autgroup: bool
    witness: tuple[int, ...] | None
    reason: str
    tested: list[tuple[int, ...]] = field(default_factory=list)


def is_digraph_autgroup(
    g: PermGroup,
    mode: str = RANK4,
    dec: OrbitalDecomposition | None = None,
    closed: bool | None = None,
) -> AutgroupDecision:
    """Is G = Aut(Gamma) for a union Gamma of orbital digraphs?

    Every digraph admitting G is such a union, so this decides whether G is the
    automorphism group of any graph or digraph on its points.
    """
    _require_transitive(g)
    dec = dec or decompose(g)
    subsets = candidate_index_sets(dec, mode)
    if closed is None:
        closed = is_two_closed(g, dec)
    if not closed:
        return AutgroupDecision(False, None, "group is not 2-closed")
    tested = []
    for s in subsets:
        dg = generalized_orbital_digraph(g, dec, s)
        extra = find_extra_automorphism(ColoredDigraph.from_digraph(dg), g)
        tested.append(s)
        logger.info("arc set %s: %s", s, "Aut = G" if extra is None else "Aut > G")
        if extra is None:
            return AutgroupDecision(True, s, "automorphism group equals G", tested)
    return AutgroupDecision(False, None, "every candidate digraph has extra automorphisms", tested)


@dataclass
class ClosureReport:
    degree: int
    input_order: int
    closure_order: int
    is_two_closed: bool
    rank: int
    subdegrees: list[int]
    pairing: list[int]
    orbital_aut_orders: list[int]
    digraph_autgroup: bool | None = None
    digraph_autgroup_witness: list[int] | None = None
    mode: str | None = None

    def to_json(self) -> dict:
        d = asdict(self)
        # group orders can exceed 2^63; JSON keeps them as exact integers
        return d


def closure_report(
    g: PermGroup,
    check_autgroup: bool = False,
    mode: str = RANK4,
) -> tuple[ClosureReport, PermGroup, OrbitalDecomposition]:
    _require_transitive(g)
    dec = decompose(g)
    closure = two_closure(g, dec)
    closed = closure.order() == g.order()
    aut_orders = []
    for i in range(1, dec.rank):
        dg = generalized_orbital_digraph(g, dec, [i])
        aut = automorphism_group(ColoredDigraph.from_digraph(dg), known=closure)
        aut_orders.append(aut.order())
    report = ClosureReport(
        degree=g.degree,
        input_order=g.order(),
        closure_order=closure.order(),
        is_two_closed=closed,
        rank=dec.rank,
        subdegrees=dec.subdegrees,
        pairing=dec.pairing,
        orbital_aut_orders=aut_orders,
    )
    if check_autgroup:
        decision = is_digraph_autgroup(g, mode, dec, closed)
        report.digraph_autgroup = decision.is_autgroup
        report.digraph_autgroup_witness = list(decision.witness) if decision.witness else None
        report.mode = mode
    return report, closure, dec


def witness_digraph(g: PermGroup, dec: OrbitalDecomposition, witness) -> Digraph:
    return generalized_orbital_digraph(g, dec, witness)
