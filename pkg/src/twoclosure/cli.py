"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 invalid input,
3 precondition violated (for example an intransitive group).
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import random
import sys
import time
from collections.abc import Callable, Iterable
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .closure import EXHAUSTIVE, RANK4, PreconditionError, closure_report, two_closure, witness_digraph
from .constructions import (
    CATALOG,
    DEFAULT_DEGREE_BOUND,
    DescriptorError,
    GroupDescriptor,
    catalog,
    direct_sum_group,
    family_descriptor,
    gammaL1_affine,
    hamming_graph,
    hamming_wreath_generators,
    tensor_group,
)
from .graphauto import ColoredDigraph, automorphism_group, is_isomorphic
from .orbitals import Digraph, decompose, generalized_orbital_digraph, orbital_digraph
from .permgrp import DegreeError, NotTransitiveError, Permutation, PermGroup
from . import tables

logger = logging.getLogger("twoclosure")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3
THREADS_ENV = "TWOCLOSURE_THREADS"
DEFAULT_SEED = 20_240_917
SUITES = ("families", "tables", "catalog", "properties")


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    degree_bound: int = DEFAULT_DEGREE_BOUND
    threads: int = 1
    seed: int = DEFAULT_SEED
    output_format: str = "json"
    suite: str | None = None

    def to_json(self) -> dict:
        return asdict(self)


# --- checks ---------------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    provenance: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        return asdict(self)


class Checklist:
    """Collects named boolean checks; exceptions count as failures."""

    def __init__(self) -> None:
        self.results: list[CheckResult] = []

    def check(self, name: str, fn: Callable[[], object], provenance: str = "") -> bool:
        t = time.perf_counter()
        try:
            out = fn()
            if isinstance(out, tuple):
                ok, detail = bool(out[0]), str(out[1])
            else:
                ok, detail = bool(out), ""
        except Exception as exc:  # noqa: BLE001 - reported as a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        res = CheckResult(name, ok, detail, provenance, round(time.perf_counter() - t, 3))
        self.results.append(res)
        logger.info("%s %s %s", "PASS" if ok else "FAIL", name, detail)
        return ok

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)


def _cd(dg: Digraph) -> ColoredDigraph:
    return ColoredDigraph.from_digraph(dg)


def _iso(a: Digraph, b: Digraph) -> bool:
    return is_isomorphic(_cd(a), _cd(b))[0]


def _aut(dg: Digraph, known: PermGroup | None = None) -> PermGroup:
    return automorphism_group(_cd(dg), known=known)


def _hamming_check(g: PermGroup, dec, index: int, k: int, exact_order: bool) -> tuple[bool, str]:
    """Orbital graph ``index`` is H(2, k); its Aut contains the transported wreath generators."""
    dg = orbital_digraph(g, dec, index)
    ham = hamming_graph(k)
    ok, witness = is_isomorphic(_cd(ham), _cd(dg))
    if not ok:
        return False, "not isomorphic to the Hamming graph"
    # witness maps H(2,k) onto the orbital graph; transport S_k wr S_2 along it
    w = witness.images
    winv = np.empty_like(w)
    winv[w] = np.arange(len(w))
    cd = _cd(dg)
    for h in hamming_wreath_generators(k):
        conj = w[h.images[winv]]
        if not cd.is_automorphism(conj):
            return False, "transported wreath generator is not an automorphism"
    target = math.factorial(k) ** 2 * 2
    if exact_order:
        order = _aut(dg, known=g).order()
        return order == target, f"|Aut| = {order}, expected {target}"
    return True, f"contains S_{k} wr S_2 (order {target})"


def suite_families(cl: Checklist, include_slow: bool = True) -> None:
    ms = (2, 3) if include_slow else (2,)
    for m in ms:
        tag = f"G({m})"
        desc = family_descriptor("G", m=m)
        g = desc.build()
        dec = decompose(g)
        lab = desc.metadata["suborbit_representatives"]
        idx = dec.suborbit_index()
        k = 3**m
        cl.check(f"{tag} transitive", g.is_transitive, "family G")
        cl.check(f"{tag} primitive", g.is_primitive, "family G")
        cl.check(f"{tag} rank 4", lambda: (dec.rank == 4, f"subdegrees {dec.subdegrees}"), "family G")
        cl.check(f"{tag} stabilizer order 4|GL_m(3)|", lambda: g.order() == k * k * 4 * _gl(3, m), "family G")
        rep = closure_report(g, check_autgroup=True)[0]
        cl.check(f"{tag} 2-closed", lambda: rep.is_two_closed, "family G")
        cl.check(f"{tag} not the automorphism group of a digraph", lambda: rep.digraph_autgroup is False, "family G")
        for name in ("B1", "B2"):
            i = int(idx[lab[name]])
            cl.check(
                f"{tag} orbital graph {name} = H(2,{k})",
                lambda i=i: _hamming_check(g, dec, i, k, exact_order=(m == 2)),
                "family G, Hamming orbital graphs",
            )

    g = family_descriptor("H", m=2).build()
    dec = decompose(g)
    cl.check("H(2) transitive", g.is_transitive, "family H")
    cl.check("H(2) primitive", g.is_primitive, "family H")
    cl.check("H(2) subdegrees [1,30,45,180]", lambda: (dec.subdegrees == [1, 30, 45, 180], str(dec.subdegrees)), "family H")
    cl.check("H(2) stabilizer order 12|GL_2(4)|", lambda: g.order() == 256 * 12 * _gl(4, 2), "family H")
    rep = closure_report(g, check_autgroup=True)[0]
    cl.check("H(2) 2-closed", lambda: rep.is_two_closed, "family H")
    cl.check("H(2) not the automorphism group of a digraph", lambda: rep.digraph_autgroup is False, "family H")
    cl.check("H(2) 30-valent orbital graph = H(2,16)", lambda: _hamming_check(g, dec, 1, 16, exact_order=True), "family H")

    for params in ((5, 2, 1, 1, 1), (2, 6, 1, 0, 1)):
        p, d, m1, e, s = params
        tag = f"G({p}^{d},{m1},{e},{s})"
        g = GroupDescriptor("rank4-gammaL1", dict(p=p, d=d, m1=m1, e=e, s=s)).build()
        dec = decompose(g)
        third = (p**d - 1) // 3
        cl.check(f"{tag} base group primitive", g.is_primitive, "rank 4 semilinear family")
        cl.check(
            f"{tag} three suborbits of length (p^d-1)/3",
            lambda: (dec.subdegrees == [1, third, third, third], str(dec.subdegrees)),
            "rank 4 semilinear family",
        )
        graphs = [orbital_digraph(g, dec, i) for i in (1, 2, 3)]
        cl.check(
            f"{tag} orbital digraphs pairwise isomorphic",
            lambda: _iso(graphs[0], graphs[1]) and _iso(graphs[0], graphs[2]),
            "rank 4 semilinear family",
        )
        clo = two_closure(g, dec)

        def strict(clo=clo, graphs=graphs):
            orders = []
            for dg in graphs:
                aut = _aut(dg, known=clo)
                if not aut.contains_group(clo):
                    return False, "Aut does not contain the closure"
                orders.append(aut.order())
            return all(o > clo.order() for o in orders), f"closure {clo.order()}, Aut orders {orders}"

        cl.check(f"{tag} every orbital digraph has Aut strictly above the closure", strict, "rank 4 semilinear family")


def _gl(q: int, m: int) -> int:
    return math.prod(q**m - q**i for i in range(m))


def suite_catalog(cl: Checklist, include_extended: bool = False) -> None:
    g = catalog("49-16")
    dec = decompose(g)
    graphs = {i: orbital_digraph(g, dec, i) for i in range(1, dec.rank)}
    cl.check("49-16 rank 4", lambda: (dec.rank == 4, str(dec.subdegrees)), "named example 49-16")

    def two_hamming():
        hits = [i for i, dg in graphs.items() if _iso(dg, hamming_graph(7))]
        return len(hits) == 2, f"Hamming orbital graphs at suborbits {hits}"

    cl.check("49-16 exactly two orbital graphs = H(2,7)", two_hamming, "named example 49-16")

    def third_aut():
        dg = graphs[3]
        aut = _aut(dg, known=g)
        ref = gammaL1_affine(7, 2, 2, 0, 1)
        same = aut.order() == 49 * 48 and aut.contains_group(ref) and ref.contains_group(aut)
        return same, f"|Aut| = {aut.order()}"

    cl.check("49-16 third orbital graph has Aut = 7^2:<w^2,a>", third_aut, "named example 49-16")

    g = catalog("81-48")
    dec = decompose(g)
    cl.check("81-48 valencies 20,20,40", lambda: (dec.subdegrees == [1, 20, 20, 40], str(dec.subdegrees)), "named example 81-48")

    g = catalog("121-23")
    dec = decompose(g)
    cl.check("121-23 suborbits 40,40,40", lambda: (dec.subdegrees == [1, 40, 40, 40], str(dec.subdegrees)), "named example 121-23")

    def aut_orders():
        orders = [_aut(orbital_digraph(g, dec, i), known=g).order() for i in (1, 2, 3)]
        return all(o == 121 * 80 for o in orders), f"orders {orders}, expected {121 * 80}"

    cl.check("121-23 each orbital digraph has |Aut| = 121*80", aut_orders, "named example 121-23")

    if include_extended:
        g = catalog("2401-663")
        dec = decompose(g)
        cl.check(
            "2401-663 suborbits 480,960,960",
            lambda: (dec.subdegrees == [1, 480, 960, 960], str(dec.subdegrees)),
            "named example 2401-663",
        )

        def inside_gammaL1():
            aut = _aut(orbital_digraph(g, dec, 1), known=g)
            ref = gammaL1_affine(7, 4, 1, 0, 1)
            return ref.contains_group(aut), f"|Aut| = {aut.order()}"

        cl.check("2401-663 480-valent graph has Aut inside AGammaL_1(7^4)", inside_gammaL1, "named example 2401-663")


def suite_tables(cl: Checklist, limit: int = tables.SWEEP_LIMIT) -> None:
    res = tables.sweep(limit)
    cl.check(
        f"class (A) rows sum to p^d - 1 for p^d <= {limit}",
        lambda: (not res.sum_failures, f"checked {res.checked}"),
        "rank 3 subdegree formulas",
    )
    exc_tags = {(e["tag"], e["params"]["q"]) for e in res.exceptions}
    cl.check(
        "divisibility dichotomy for A3..A11 at p^d >= 4096",
        lambda: (not res.larger_failures and exc_tags <= {("A6", 2), ("A7", 2)},
                 f"{res.larger_checked} checked, {len(res.exceptions)} in the q = 2 exception"),
        "rank 3 subdegree formulas",
    )
    cl.check(
        "static records sum to p^d - 1",
        lambda: all(a + b == r.degree - 1 for r in tables.static_records() for a, b in r.pairs),
        "extraspecial and exceptional classes",
    )
    for label, build, expected in (
        ("A2 at 81 points (GL_2(3) wr C_2)", lambda: direct_sum_group(3, 2), [1, 16, 64]),
        ("A3 at 81 points (GL_2(3) o GL_2(3))", lambda: tensor_group(3, 1, 2), [1, 32, 48]),
        ("A3 at 256 points (GL_2(4) o GL_2(4))", lambda: tensor_group(2, 2, 2), [1, 75, 180]),
    ):
        cl.check(
            f"{label} subdegrees {expected[1:]}",
            lambda build=build, expected=expected: (decompose(build()).subdegrees == expected,
                                                     str(decompose(build()).subdegrees)),
            "cross-validation against the formulas",
        )


def _corpus() -> list[tuple[str, PermGroup]]:
    from .constructions import family_G, family_H, rank4_gammaL1
    from .permgrp import alternating_group, cyclic_group, symmetric_group

    return [
        ("C6", cyclic_group(6)),
        ("V4", PermGroup([Permutation([1, 0, 3, 2]), Permutation([2, 3, 0, 1])], 4)),
        ("A4", alternating_group(4)),
        ("S5", symmetric_group(5)),
        ("AGL(1,7)", gammaL1_affine(7, 1, 1, 0, 1)),
        ("G(25,1,1,1)", rank4_gammaL1(5, 2, 1, 1, 1)),
        ("G(64,1,0,1)", rank4_gammaL1(2, 6, 1, 0, 1)),
        ("49-16", catalog("49-16")),
        ("81-48", catalog("81-48")),
        ("G(2)", family_G(2)),
        ("H(2)", family_H(2)),
    ]


def suite_properties(cl: Checklist, seed: int = DEFAULT_SEED) -> None:
    from .constructions import two_orbit_conditions, gammaL1_subgroup
    from .permgrp import is_primitive_by_blocks, orbits_of

    rng = random.Random(seed)
    for name, g in _corpus():
        def orbit_stab(g=g):
            return all(len(g.orbit(x)) * g.stabilizer(x).order() == g.order() for x in range(0, g.degree, max(1, g.degree // 7)))

        cl.check(f"{name} orbit-stabilizer", orbit_stab, "engine property")
        if g.degree <= 100:
            cl.check(f"{name} Higman test agrees with block search", lambda g=g: g.is_primitive() == is_primitive_by_blocks(g), "engine property")
        if not g.is_transitive():
            continue

        def idem(g=g):
            dec = decompose(g)
            c1 = two_closure(g, dec)
            dec1 = decompose(c1)
            c2 = two_closure(c1, dec1)
            same = [sorted(a) for a in dec.suborbits] == [sorted(a) for a in dec1.suborbits]
            return c1.order() == c2.order() and same and c1.contains_group(g), f"|G2| = {c1.order()}"

        cl.check(f"{name} 2-closure idempotent and orbital-preserving", idem, "engine property")

        def canon(g=g):
            dec = decompose(g)
            dg = _cd(orbital_digraph(g, dec, 1))
            from .graphauto import canonical_form

            ref = canonical_form(dg).certificate
            for _ in range(5):
                perm = list(range(g.degree))
                rng.shuffle(perm)
                if canonical_form(dg.relabel(perm)).certificate != ref:
                    return False
            return True

        cl.check(f"{name} canonical form invariant under relabeling", canon, "engine property")

    def converse():
        bad, count = [], 0
        for p, d, m1, v, e, s in _two_orbit_params(2**12):
            rep = two_orbit_conditions(p, d, m1, v, e, s)
            if not rep.ok:
                continue
            count += 1
            h = gammaL1_subgroup(p, d, v * m1, e, s)
            lens = sorted(len(o) for o in orbits_of(list(h.generators), p**d) if o != [0])
            n1 = p**d - 1
            if lens != sorted([n1 // v, (v - 1) * n1 // v]):
                bad.append((p, d, m1, v, e, s, lens))
        return not bad and count > 0, f"{count} parameter sets, failures {bad[:3]}"

    cl.check("two-orbit converse for p^d <= 4096", converse, "semilinear two-orbit criterion")


def _two_orbit_params(limit: int) -> Iterable[tuple[int, int, int, int, int, int]]:
    """Candidate (p, d, m1, v, e, s) with p^d <= limit, m1 and s odd, v an odd prime."""
    from sympy import primerange

    for p in primerange(2, limit + 1):
        d = 1
        while p**d <= limit:
            for s in range(1, d + 1, 2):
                if d % s:
                    continue
                for m1 in range(1, d // s + 1, 2):
                    for v in primerange(3, d // (m1 * s) + 2):
                        if d % (m1 * s * (v - 1)):
                            continue
                        for e in range(v * m1):
                            yield p, d, m1, v, e, s
            d += 1


# --- I/O helpers ------------------------------------------------------------------------

def _load_json(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def _descriptor_from_args(args) -> GroupDescriptor:
    if getattr(args, "descriptor", None):
        return GroupDescriptor.from_json(_load_json(args.descriptor))
    if getattr(args, "family", None):
        params = {k: getattr(args, k) for k in ("p", "d", "m", "e", "s", "m1", "name")}
        return family_descriptor(args.family, **params)
    if getattr(args, "group", None):
        data = _load_json(args.group)
        if "kind" in data:
            return GroupDescriptor.from_json(data)
        return GroupDescriptor("permutations", {"degree": data.get("degree"), "generators": data.get("generators", [])})
    raise InputError("give --descriptor, --group or --family")


def _build(args, cfg: RunConfig) -> tuple[GroupDescriptor, PermGroup]:
    desc = _descriptor_from_args(args)
    logger.info("building %s %s", desc.kind, desc.params)
    return desc, desc.build(cfg.degree_bound)


def _envelope(cfg: RunConfig, desc: GroupDescriptor | None, payload: dict) -> dict:
    out = {"version": __version__, "config": cfg.to_json()}
    if desc is not None:
        out["descriptor"] = desc.to_json()
        out["descriptor_sha256"] = desc.digest()
    out.update(payload)
    return out


def _emit(obj: dict, cfg: RunConfig) -> None:
    if cfg.output_format == "json":
        sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        for k, v in obj.items():
            sys.stdout.write(f"{k}: {json.dumps(v, sort_keys=True)}\n")


# --- commands ---------------------------------------------------------------------------

def cmd_construct(args, cfg: RunConfig) -> int:
    desc, g = _build(args, cfg)
    payload = {"group": {**g.to_json(), "order": str(g.order()), "base": g.base}}
    _emit(_envelope(cfg, desc, payload), cfg)
    return EXIT_OK


def cmd_analyze(args, cfg: RunConfig) -> int:
    desc, g = _build(args, cfg)
    dec = decompose(g)
    stats = []
    for i in range(1, dec.rank):
        dg = orbital_digraph(g, dec, i)
        stats.append({
            "index": i,
            "out_degree": dec.subdegrees[i],
            "arcs": dg.num_arcs,
            "paired_with": dec.pairing[i],
            "self_paired": dec.pairing[i] == i,
            "representative": dec.suborbits[i][0],
        })
    payload = {
        "degree": g.degree,
        "order": str(g.order()),
        "rank": dec.rank,
        "subdegrees": dec.subdegrees,
        "pairing": dec.pairing,
        "primitive": g.is_primitive(),
        "orbitals": stats,
    }
    if "suborbit_representatives" in desc.metadata:
        idx = dec.suborbit_index()
        payload["labels"] = {k: int(idx[v]) for k, v in desc.metadata["suborbit_representatives"].items()}
    _emit(_envelope(cfg, desc, payload), cfg)
    return EXIT_OK


def cmd_closure(args, cfg: RunConfig) -> int:
    desc, g = _build(args, cfg)
    mode = EXHAUSTIVE if args.exhaustive else RANK4
    report, clo, dec = closure_report(g, check_autgroup=args.check_autgroup, mode=mode)
    payload = {"report": report.to_json()}
    if args.emit_closure:
        payload["closure"] = clo.to_json()
    if args.emit_witness:
        if report.digraph_autgroup_witness:
            dg = witness_digraph(g, dec, report.digraph_autgroup_witness)
            text = dg.to_dimacs() if args.emit_format == "dimacs" else dg.to_edge_list()
            Path(args.emit_witness).write_text(text)
            payload["witness_file"] = args.emit_witness
        else:
            logger.warning("no witness digraph to write")
    _emit(_envelope(cfg, desc, payload), cfg)
    return EXIT_OK


def cmd_orbital(args, cfg: RunConfig) -> int:
    desc, g = _build(args, cfg)
    dec = decompose(g)
    dg = generalized_orbital_digraph(g, dec, args.index)
    text = dg.to_dimacs() if args.emit_format == "dimacs" else dg.to_edge_list()
    sys.stdout.write(text)
    return EXIT_OK


def cmd_autgroup(args, cfg: RunConfig) -> int:
    try:
        dg = Digraph.from_edge_list(Path(args.graph).read_text())
    except (OSError, ValueError, IndexError) as exc:
        raise InputError(f"cannot read edge list {args.graph}: {exc}") from exc
    colors = None
    if args.colors:
        colors = [int(x) for x in Path(args.colors).read_text().split()]
        if len(colors) != dg.n:
            raise InputError(f"color file has {len(colors)} entries for {dg.n} vertices")
    graph = ColoredDigraph.from_arcs(dg.n, dg.arcs, vertex_colors=colors)
    aut = automorphism_group(graph)
    payload = {"group": {**aut.to_json(), "order": str(aut.order())}}
    _emit(_envelope(cfg, None, payload), cfg)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    cl = Checklist()
    t = time.perf_counter()
    if args.suite == "families":
        suite_families(cl, include_slow=not args.quick)
    elif args.suite == "tables":
        suite_tables(cl, limit=args.limit)
    elif args.suite == "catalog":
        suite_catalog(cl, include_extended=args.extended)
    else:
        suite_properties(cl, seed=cfg.seed)
    payload = {
        "suite": args.suite,
        "passed": cl.ok,
        "checks": [r.to_json() for r in cl.results],
        "seconds": round(time.perf_counter() - t, 3),
    }
    if cfg.output_format == "text":
        for r in cl.results:
            sys.stdout.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  {r.detail}\n")
    else:
        _emit(_envelope(cfg, None, payload), cfg)
    return EXIT_OK if cl.ok else EXIT_FAIL


def cmd_tables(args, cfg: RunConfig) -> int:
    data = tables.dump()
    if args.format == "json":
        sys.stdout.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    else:
        for rec in tables.static_records():
            pairs = " or ".join(f"{a},{b}" for a, b in rec.pairs)
            sys.stdout.write(f"{rec.cls:12s} {rec.group:16s} {rec.p}^{rec.d:<3d} {pairs}\n")
    return EXIT_OK


# --- parser ------------------------------------------------------------------------------

def _add_group_args(sp: argparse.ArgumentParser) -> None:
    src = sp.add_argument_group("group source")
    src.add_argument("--descriptor", help="JSON group descriptor file ('-' for stdin)")
    src.add_argument("--group", help="JSON group file {degree, generators}")
    src.add_argument("--family", help="G, H, gammal1, rank4-gammal1 or catalog")
    for name in ("p", "d", "m", "e", "s", "m1"):
        src.add_argument(f"--{name}", type=int)
    src.add_argument("--name", help="catalog entry, one of " + ", ".join(sorted(CATALOG)))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twoclosure", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE_BOUND)
    ap.add_argument("--threads", type=int, default=None, help=f"default from ${THREADS_ENV} or 1")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--format", dest="output_format", choices=("json", "text"), default="json")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("construct", help="build a group and print its generators")
    _add_group_args(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("analyze", help="rank, subdegrees, pairing and primitivity")
    _add_group_args(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("closure", help="2-closure report")
    _add_group_args(sp)
    sp.add_argument("--check-autgroup", action="store_true")
    sp.add_argument("--exhaustive", action="store_true", help="test all unions of orbitals")
    sp.add_argument("--emit-witness", metavar="FILE")
    sp.add_argument("--emit-format", choices=("edge-list", "dimacs"), default="edge-list")
    sp.add_argument("--emit-closure", action="store_true", help="include closure generators")
    sp.set_defaults(func=cmd_closure)

    sp = sub.add_parser("orbital", help="print a (generalized) orbital digraph")
    _add_group_args(sp)
    sp.add_argument("--index", type=int, nargs="+", required=True)
    sp.add_argument("--emit-format", choices=("edge-list", "dimacs"), default="edge-list")
    sp.set_defaults(func=cmd_orbital)

    sp = sub.add_parser("autgroup", help="automorphism group of an edge-list digraph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--colors", help="whitespace-separated vertex colours")
    sp.set_defaults(func=cmd_autgroup)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", choices=SUITES, required=True)
    sp.add_argument("--quick", action="store_true", help="families: skip degree 729")
    sp.add_argument("--extended", action="store_true", help="catalog: include degree 2401")
    sp.add_argument("--limit", type=int, default=tables.SWEEP_LIMIT, help="tables: sweep bound")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("tables", help="subdegree tables")
    sp.add_argument("action", choices=("dump",))
    sp.add_argument("--format", dest="format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_tables)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    threads = args.threads or int(os.environ.get(THREADS_ENV, "1"))
    cfg = RunConfig(args.degree_bound, threads, args.seed, args.output_format, getattr(args, "suite", None))
    if threads != 1:
        logger.info("search is single-threaded; --threads %d has no effect on results", threads)
    try:
        return args.func(args, cfg)
    except (DescriptorError, InputError, DegreeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotTransitiveError, PreconditionError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
