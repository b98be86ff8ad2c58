"""Automorphism groups, canonical forms and isomorphism of coloured digraphs.

The engine is a plain individualization-refinement search:

* an ordered partition (``lab`` plus cell starts) is refined to an equitable
  one by counting arc colours into splitter cells, Hopcroft style;
* the target cell is the first smallest non-singleton cell and children are
  tried in ascending vertex order;
* every refinement emits a trace (one hash per cell split) and subtrees whose
  trace differs from the reference path are cut;
* automorphisms already known prune children lying in one orbit of the
  pointwise stabilizer of the current prefix.

The group search runs bottom-up along the first path, so the resulting base is
that path and the order is the product of the basic orbit lengths found.
A known subgroup can be supplied to seed the search; then only candidates
outside its orbits are explored.
"""
from __future__ import annotations

import logging
import math
import sys
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .permgrp import Permutation, PermGroup

logger = logging.getLogger(__name__)

_FNV_PRIME = np.uint64(0x100000001B3)
_FNV_SEED = np.uint64(0xCBF29CE484222325)


# --- coloured digraphs ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ColoredDigraph:
    """Vertex- and arc-coloured digraph stored as a dense colour matrix.

    ``matrix[u, v]`` is the colour of the ordered pair (u, v); 0 means no arc.
    For a total pair colouring (2-closure input) every entry is positive.
    """

    n: int
    vertex_colors: np.ndarray
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if m.shape != (self.n, self.n):
            raise ValueError(f"colour matrix must be {self.n}x{self.n}")
        if m.size and m.min() < 0:
            raise ValueError("arc colours must be non-negative")
        m = np.ascontiguousarray(m, dtype=np.int32)
        vc = np.ascontiguousarray(self.vertex_colors, dtype=np.int64)
        if vc.shape != (self.n,):
            raise ValueError("one vertex colour per vertex required")
        m.setflags(write=False)
        vc.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "vertex_colors", vc)

    @classmethod
    def from_arcs(
        cls,
        n: int,
        arcs: Iterable[Sequence[int]],
        colors: Iterable[int] | None = None,
        vertex_colors: Sequence[int] | None = None,
    ) -> ColoredDigraph:
        arcs = np.asarray(list(arcs), dtype=np.int64).reshape(-1, 2)
        col = np.ones(len(arcs), dtype=np.int64) if colors is None else np.asarray(list(colors))
        if len(col) != len(arcs):
            raise ValueError("one colour per arc required")
        if (col <= 0).any():
            raise ValueError("arc colours must be positive")
        m = np.zeros((n, n), dtype=np.int32)
        flat = arcs[:, 0] * n + arcs[:, 1]
        if len(np.unique(flat)) != len(flat):
            raise ValueError("duplicate arcs")
        m[arcs[:, 0], arcs[:, 1]] = col
        vc = np.zeros(n, dtype=np.int64) if vertex_colors is None else vertex_colors
        return cls(n, vc, m)

    @classmethod
    def from_matrix(cls, matrix, vertex_colors: Sequence[int] | None = None) -> ColoredDigraph:
        m = np.asarray(matrix)
        n = m.shape[0]
        vc = np.zeros(n, dtype=np.int64) if vertex_colors is None else vertex_colors
        return cls(n, vc, m)

    @classmethod
    def from_digraph(cls, digraph) -> ColoredDigraph:
        """From anything with ``n`` and an ``arcs`` array (orbital digraphs)."""
        return cls.from_arcs(digraph.n, digraph.arcs)

    def arcs(self) -> np.ndarray:
        u, v = np.nonzero(self.matrix)
        return np.stack([u, v], axis=1)

    def relabel(self, perm: Permutation | Sequence[int]) -> ColoredDigraph:
        """Image under the vertex bijection x -> perm(x)."""
        g = perm.images if isinstance(perm, Permutation) else np.asarray(perm, dtype=np.int64)
        ginv = np.empty_like(g)
        ginv[g] = np.arange(self.n)
        return ColoredDigraph(self.n, self.vertex_colors[ginv], self.matrix[np.ix_(ginv, ginv)])

    def is_automorphism(self, perm: Permutation | np.ndarray) -> bool:
        g = perm.images if isinstance(perm, Permutation) else np.asarray(perm, dtype=np.int64)
        if (self.vertex_colors[g] != self.vertex_colors).any():
            return False
        return bool(_preserves(self.matrix, g))


# --- numba kernels ---------------------------------------------------------------

@njit(cache=True)
def _mix(h, x):
    h = (h ^ np.uint64(x)) * np.uint64(0x100000001B3)
    return h ^ (h >> np.uint64(29))


@njit(cache=True)
def _refine_kernel(codes, rnd, lab, cell, csize, init_q, ref, use_ref):
    """Refine (lab, cell, csize) in place; returns (events, count, ok).

    csize[t] is the size of the cell starting at position t and 0 at every
    position that does not start a cell.  With ``use_ref`` the run aborts as
    soon as an event differs from ``ref``.
    """
    n = lab.shape[0]
    inq = np.zeros(n, dtype=np.bool_)
    ring = np.empty(n + 1, dtype=np.int64)
    head = 0
    tail = 0
    qn = 0
    for s in init_q:
        if not inq[s]:
            ring[tail] = s
            tail = (tail + 1) % (n + 1)
            inq[s] = True
            qn += 1
    events = np.empty(n + 1, dtype=np.uint64)
    ne = 0
    ncells = 0
    t = 0
    while t < n:
        ncells += 1
        t += csize[t]
    keys = np.empty(n, dtype=np.uint64)
    W = np.empty(n, dtype=np.int64)
    tmp = np.empty(n, dtype=np.int64)
    tk = np.empty(n, dtype=np.uint64)
    while qn > 0 and ncells < n:
        s = ring[head]
        head = (head + 1) % (n + 1)
        qn -= 1
        inq[s] = False
        wsz = csize[s]
        for a in range(wsz):
            W[a] = lab[s + a]
        t = 0
        while t < n:
            sz = csize[t]
            if sz == 1:
                t += 1
                continue
            same = True
            for pos in range(t, t + sz):
                v = lab[pos]
                h = np.uint64(0)
                for a in range(wsz):
                    h += rnd[codes[v, W[a]]]
                keys[pos] = h
                if h != keys[t]:
                    same = False
            if same:
                t += sz
                continue
            order = np.argsort(keys[t : t + sz], kind="mergesort")
            for a in range(sz):
                tmp[a] = lab[t + order[a]]
                tk[a] = keys[t + order[a]]
            for a in range(sz):
                lab[t + a] = tmp[a]
                keys[t + a] = tk[a]
            ev = _mix(_mix(_mix(np.uint64(0xCBF29CE484222325), t), s), wsz)
            largest = t
            lsz = 0
            nfrag = 0
            a = t
            while a < t + sz:
                b = a + 1
                while b < t + sz and keys[b] == keys[a]:
                    b += 1
                csize[a] = b - a
                for c in range(a, b):
                    cell[lab[c]] = a
                ev = _mix(_mix(ev, b - a), keys[a])
                if b - a > lsz:
                    lsz = b - a
                    largest = a
                nfrag += 1
                a = b
            ncells += nfrag - 1
            if use_ref:
                if ne >= ref.shape[0] or ref[ne] != ev:
                    return events[:ne], ne, False
            events[ne] = ev
            ne += 1
            was_queued = inq[t]
            a = t
            while a < t + sz:
                if (was_queued and a != t) or (not was_queued and a != largest):
                    if not inq[a]:
                        ring[tail] = a
                        tail = (tail + 1) % (n + 1)
                        inq[a] = True
                        qn += 1
                a += csize[a]
            t += sz
    if use_ref and ne != ref.shape[0]:
        return events[:ne], ne, False
    return events[:ne], ne, True


@njit(cache=True)
def _preserves(codes, g):
    n = g.shape[0]
    for u in range(n):
        gu = g[u]
        for v in range(n):
            if codes[gu, g[v]] != codes[u, v]:
                return False
    return True


@njit(cache=True)
def _components(gens, n):
    """Orbit label (least point of the orbit) of every point."""
    parent = np.arange(n)
    for k in range(gens.shape[0]):
        g = gens[k]
        for x in range(n):
            a = x
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            b = g[x]
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    comp = np.empty(n, dtype=np.int64)
    for x in range(n):
        a = x
        while parent[a] != a:
            a = parent[a]
        comp[x] = a
    return comp


def _stack(gens: Sequence[np.ndarray], n: int) -> np.ndarray:
    if not gens:
        return np.empty((0, n), dtype=np.int64)
    return np.ascontiguousarray(np.array(gens, dtype=np.int64))


# --- search state -----------------------------------------------------------------

class _Node:
    __slots__ = ("lab", "cell", "csize", "events")

    def __init__(self, lab, cell, csize, events):
        self.lab, self.cell, self.csize, self.events = lab, cell, csize, events

    def target(self) -> int:
        """Start of the first smallest non-singleton cell, or -1 if discrete."""
        starts = np.flatnonzero(self.csize > 1)
        if not len(starts):
            return -1
        return int(starts[np.argmin(self.csize[starts])])

    def cell_vertices(self, t: int) -> np.ndarray:
        return np.sort(self.lab[t : t + self.csize[t]])


class _Engine:
    def __init__(self, graph: ColoredDigraph):
        self.graph = graph
        self.n = graph.n
        m = graph.matrix.astype(np.int64)
        top = int(m.max(initial=0)) + 1
        pair = m * top + m.T
        used = np.zeros(top * top, dtype=np.int64)
        used[pair.ravel()] = 1
        remap = np.cumsum(used) - 1
        self.codes = np.ascontiguousarray(remap[pair].astype(np.int32))
        ncodes = int(used.sum())
        rng = np.random.default_rng(0x5EED)
        self.rnd = rng.integers(1, 2**63, size=max(ncodes, 1), dtype=np.int64).astype(np.uint64)
        self.vcol = graph.vertex_colors

    def refine(self, lab, cell, csize, queue, ref=None):
        use_ref = ref is not None
        r = ref if use_ref else np.empty(0, dtype=np.uint64)
        ev, _, ok = _refine_kernel(
            self.codes, self.rnd, lab, cell, csize, np.asarray(queue, dtype=np.int64), r, use_ref
        )
        return ev, ok

    def root(self) -> _Node:
        n = self.n
        lab = np.argsort(self.vcol, kind="stable").astype(np.int64)
        sorted_col = self.vcol[lab]
        starts = np.flatnonzero(np.r_[True, sorted_col[1:] != sorted_col[:-1]]) if n else np.empty(0, int)
        csize = np.zeros(n, dtype=np.int64)
        csize[starts] = np.diff(np.r_[starts, n])
        cell = np.empty(n, dtype=np.int64)
        cell[lab] = np.repeat(starts, csize[starts])
        ev, _ = self.refine(lab, cell, csize, starts)
        head = np.array([_mix(_FNV_SEED, int(c)) for c in np.unique(self.vcol)], dtype=np.uint64)
        return _Node(lab, cell, csize, np.concatenate([head, ev]))

    def child(self, node: _Node, v: int, ref=None) -> _Node | None:
        lab, cell, csize = node.lab.copy(), node.cell.copy(), node.csize.copy()
        t = int(cell[v])
        sz = int(csize[t])
        p = t + int(np.flatnonzero(lab[t : t + sz] == v)[0])
        lab[p], lab[t] = lab[t], v
        csize[t] = 1
        csize[t + 1] = sz - 1
        cell[lab[t + 1 : t + sz]] = t + 1
        ev, ok = self.refine(lab, cell, csize, [t], ref)
        if not ok:
            return None
        return _Node(lab, cell, csize, ev)

    def is_automorphism(self, g: np.ndarray) -> bool:
        return bool((self.vcol[g] == self.vcol).all()) and bool(_preserves(self.codes, g))


@dataclass
class _Path:
    nodes: list[_Node]
    base: list[int]
    targets: list[int]

    @property
    def leaf(self) -> np.ndarray:
        return self.nodes[-1].lab


def _first_path(eng: _Engine) -> _Path:
    nodes = [eng.root()]
    base, targets = [], []
    while True:
        t = nodes[-1].target()
        if t < 0:
            break
        v = int(nodes[-1].cell_vertices(t)[0])
        base.append(v)
        targets.append(t)
        nodes.append(eng.child(nodes[-1], v))
    return _Path(nodes, base, targets)


class _AutSearch:
    """Bottom-up search for generators of Aut along the first path."""

    def __init__(self, eng: _Engine, path: _Path, known: PermGroup | None):
        self.eng, self.path = eng, path
        self.n = eng.n
        self.found: list[tuple[int, np.ndarray]] = []
        self.known = known.with_base(path.base) if known is not None else None
        self.known_strong = (
            [s for s in self.known._chain.strong] if self.known is not None else []
        )

    def _known_level(self, k: int) -> list[np.ndarray]:
        if self.known is None:
            return []
        return self.known._chain.level_generators(k)

    def level_gens(self, k: int) -> list[np.ndarray]:
        return self._known_level(k) + [g for lvl, g in self.found if lvl >= k]

    def _fixing(self, prefix: list[int]) -> np.ndarray:
        pool = self.known_strong + [g for _, g in self.found]
        if not pool:
            return np.empty((0, self.n), dtype=np.int64)
        arr = _stack(pool, self.n)
        if prefix:
            pre = np.asarray(prefix)
            arr = arr[(arr[:, pre] == pre).all(axis=1)]
        return np.ascontiguousarray(arr)

    def _leaf_perm(self, node: _Node) -> np.ndarray:
        g = np.empty(self.n, dtype=np.int64)
        g[self.path.leaf] = node.lab
        return g

    def _dfs(self, node: _Node, depth: int, prefix: list[int]) -> np.ndarray | None:
        t = node.target()
        if t < 0:
            g = self._leaf_perm(node)
            return g if self.eng.is_automorphism(g) else None
        cellv = node.cell_vertices(t)
        comp = _components(self._fixing(prefix), self.n)
        seen = set()
        for w in cellv.tolist():
            c = int(comp[w])
            if c in seen:
                continue
            seen.add(c)
            child = self.eng.child(node, w, self.path.nodes[depth + 1].events)
            if child is None:
                continue
            g = self._dfs(child, depth + 1, prefix + [w])
            if g is not None:
                return g
        return None

    def run(self, stop_on_new: bool = False) -> list[int]:
        """Search every level; returns the basic orbit lengths."""
        path = self.path
        L = len(path.base)
        sizes = [1] * L
        for k in range(L - 1, -1, -1):
            b = path.base[k]
            cellv = path.nodes[k].cell_vertices(path.targets[k])
            comp = _components(_stack(self.level_gens(k), self.n), self.n)
            failed = np.zeros(self.n, dtype=bool)
            for v in cellv.tolist():
                if comp[v] == comp[b] or failed[v]:
                    continue
                child = self.eng.child(path.nodes[k], v, path.nodes[k + 1].events)
                g = None
                if child is not None:
                    g = self._dfs(child, k + 1, path.base[:k] + [v])
                if g is None:
                    failed[comp == comp[v]] = True
                    continue
                self.found.append((k, g))
                logger.debug("level %d: new automorphism mapping %d -> %d", k, b, v)
                if stop_on_new:
                    return []
                comp = _components(_stack(self.level_gens(k), self.n), self.n)
            sizes[k] = int((comp[cellv] == comp[b]).sum())
        return sizes


@dataclass
class AutomorphismResult:
    group: PermGroup
    base: list[int]
    basic_orbit_lengths: list[int]
    new_generators: list[Permutation]


def _prepare(graph: ColoredDigraph) -> tuple[_Engine, _Path]:
    if graph.n < 1:
        raise ValueError("graph must have at least one vertex")
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * graph.n + 200))
    eng = _Engine(graph)
    return eng, _first_path(eng)


def _automorphisms(graph: ColoredDigraph, known: PermGroup | None = None) -> tuple[AutomorphismResult, _Engine, _Path]:
    eng, path = _prepare(graph)
    search = _AutSearch(eng, path, known)
    sizes = search.run()
    order = math.prod(sizes)
    gens = [Permutation(g, check=False) for g in search.known_strong]
    new = [Permutation(g, check=False) for _, g in search.found]
    grp = PermGroup(gens + new, graph.n, base=path.base, order=order)
    return AutomorphismResult(grp, path.base, sizes, new), eng, path


def automorphism_group(graph: ColoredDigraph, known: PermGroup | None = None) -> PermGroup:
    """Aut(graph).  ``known`` must be a group of automorphisms; it seeds the search."""
    if known is not None:
        _check_known(graph, known)
    return _automorphisms(graph, known)[0].group


def automorphism_search(graph: ColoredDigraph, known: PermGroup | None = None) -> AutomorphismResult:
    if known is not None:
        _check_known(graph, known)
    return _automorphisms(graph, known)[0]


def find_extra_automorphism(graph: ColoredDigraph, known: PermGroup) -> Permutation | None:
    """An automorphism of ``graph`` outside ``known`` (a group of automorphisms), or None."""
    _check_known(graph, known)
    eng, path = _prepare(graph)
    search = _AutSearch(eng, path, known)
    search.run(stop_on_new=True)
    if search.found:
        return Permutation(search.found[0][1], check=False)
    return None


def _check_known(graph: ColoredDigraph, known: PermGroup) -> None:
    if known.degree != graph.n:
        raise ValueError("seed group degree differs from the number of vertices")
    for g in known.generators:
        if not graph.is_automorphism(g):
            raise ValueError("seed group contains a non-automorphism")


# --- canonical form -------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    """``labeling[i]`` is the vertex placed at canonical position i."""

    labeling: np.ndarray
    certificate: bytes
    automorphism_group: PermGroup

    def relabeling(self) -> Permutation:
        """Vertex bijection v -> canonical position of v."""
        inv = np.empty_like(self.labeling)
        inv[self.labeling] = np.arange(len(self.labeling))
        return Permutation(inv, check=False)


def _certificate(graph: ColoredDigraph, lab: np.ndarray) -> bytes:
    n = graph.n
    head = np.array([n], dtype=np.int64).tobytes()
    return head + graph.vertex_colors[lab].tobytes() + graph.matrix[np.ix_(lab, lab)].tobytes()


def canonical_form(graph: ColoredDigraph) -> CanonicalForm:
    """Canonical labeling: the leaf with the greatest trace sequence, ties by least certificate."""
    res, eng, path = _automorphisms(graph)
    group = res.group
    best: dict = {"traces": None, "cert": None, "lab": None}

    def visit(node: _Node, traces: list[bytes], stab: PermGroup, on_path: int) -> None:
        if best["traces"] is not None:
            bp = best["traces"][: len(traces)]
            if traces < bp:
                return
            if traces > bp:
                best["traces"] = None
        t = node.target()
        if t < 0:
            cert = _certificate(graph, node.lab)
            if best["traces"] is None or traces > best["traces"] or (
                traces == best["traces"] and cert < best["cert"]
            ):
                best.update(traces=list(traces), cert=cert, lab=node.lab.copy())
            return
        cellv = node.cell_vertices(t)
        comp = _components(_stack([g.images for g in stab.generators], eng.n), eng.n)
        reps, seen = [], set()
        lead = path.base[on_path] if on_path >= 0 else None
        if lead is not None:
            reps.append(lead)
            seen.add(int(comp[lead]))
        for w in cellv.tolist():
            if int(comp[w]) not in seen:
                seen.add(int(comp[w]))
                reps.append(w)
        for w in reps:
            child = eng.child(node, w)
            if on_path >= 0 and w == lead:
                sub = stab._from_chain(group._chain.tail(on_path + 1))
                nxt = on_path + 1 if on_path + 1 < len(path.base) else -1
            else:
                sub, nxt = stab.stabilizer(w), -1
            visit(child, traces + [child.events.tobytes()], sub, nxt)

    root = path.nodes[0]
    visit(root, [root.events.tobytes()], group, 0 if path.base else -1)
    return CanonicalForm(best["lab"], best["cert"], group)


def is_isomorphic(a: ColoredDigraph, b: ColoredDigraph) -> tuple[bool, Permutation | None]:
    """Compare canonical certificates; on success return a verified isomorphism a -> b."""
    if a.n != b.n:
        return False, None
    if sorted(a.vertex_colors.tolist()) != sorted(b.vertex_colors.tolist()):
        return False, None
    ca, cb = canonical_form(a), canonical_form(b)
    if ca.certificate != cb.certificate:
        return False, None
    phi = np.empty(a.n, dtype=np.int64)
    phi[ca.labeling] = cb.labeling
    witness = Permutation(phi, check=False)
    if not (b.vertex_colors[phi] == a.vertex_colors).all():
        raise AssertionError("canonical forms agree but the witness fails on vertex colours")
    mapped = np.empty_like(a.matrix)
    mapped[np.ix_(phi, phi)] = a.matrix
    if not (mapped == b.matrix).all():
        raise AssertionError("canonical forms agree but the witness fails on arcs")
    return True, witness


def equitable_partition(graph: ColoredDigraph) -> list[list[int]]:
    """Cells of the coarsest equitable refinement of the vertex colouring, in order."""
    eng = _Engine(graph)
    node = eng.root()
    out, t = [], 0
    while t < graph.n:
        sz = int(node.csize[t])
        out.append(sorted(node.lab[t : t + sz].tolist()))
        t += sz
    return out
