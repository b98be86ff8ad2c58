"""Suborbits, rank, orbital pairing and (generalized) orbital digraphs."""
from __future__ import annotations

import io
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .permgrp import NotTransitiveError, PermGroup


@dataclass(frozen=True, eq=False)
class OrbitalDecomposition:
    """Orbits of the stabilizer of ``base_point``, numbered by (length, least point)."""

    base_point: int
    suborbits: list[list[int]]
    pairing: list[int]
    degree: int
    # transversal[x] = images of a group element mapping base_point to x
    transversal: np.ndarray = field(repr=False)

    @property
    def subdegrees(self) -> list[int]:
        return [len(s) for s in self.suborbits]

    @property
    def rank(self) -> int:
        return len(self.suborbits)

    def suborbit_index(self) -> np.ndarray:
        """suborbit_index()[x] = index of the suborbit containing x."""
        out = np.empty(self.degree, dtype=np.int64)
        for i, orb in enumerate(self.suborbits):
            out[orb] = i
        return out

    def to_json(self) -> dict:
        return {
            "base_point": self.base_point,
            "rank": self.rank,
            "subdegrees": self.subdegrees,
            "pairing": self.pairing,
            "suborbits": self.suborbits,
        }


@dataclass(frozen=True, eq=False)
class Digraph:
    """Loopless digraph; ``arcs`` is a sorted (m, 2) array of ordered pairs."""

    n: int
    arcs: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.arcs, dtype=np.int64).reshape(-1, 2)
        key = a[:, 0] * self.n + a[:, 1]
        key = np.unique(key)
        a = np.stack([key // self.n, key % self.n], axis=1)
        a.setflags(write=False)
        object.__setattr__(self, "arcs", a)

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    @property
    def is_graph(self) -> bool:
        """True when the arc set is symmetric."""
        fwd = self.arcs[:, 0] * self.n + self.arcs[:, 1]
        rev = np.sort(self.arcs[:, 1] * self.n + self.arcs[:, 0])
        return bool(np.array_equal(fwd, rev))

    def out_degrees(self) -> np.ndarray:
        return np.bincount(self.arcs[:, 0], minlength=self.n)

    def adjacency(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.int32)
        m[self.arcs[:, 0], self.arcs[:, 1]] = 1
        return m

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Digraph) and self.n == other.n and np.array_equal(self.arcs, other.arcs)

    __hash__ = None  # type: ignore[assignment]

    def complement(self) -> Digraph:
        m = 1 - self.adjacency()
        np.fill_diagonal(m, 0)
        u, v = np.nonzero(m)
        return Digraph(self.n, np.stack([u, v], axis=1))

    # --- text formats ---
    def to_edge_list(self) -> str:
        buf = io.StringIO()
        buf.write(f"{self.n} {self.num_arcs}\n")
        np.savetxt(buf, self.arcs, fmt="%d")
        return buf.getvalue()

    @classmethod
    def from_edge_list(cls, text: str) -> Digraph:
        lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        n, m = int(lines[0][0]), int(lines[0][1])
        arcs = [(int(u), int(v)) for u, v in lines[1:]]
        if len(arcs) != m:
            raise ValueError(f"header announces {m} arcs, found {len(arcs)}")
        return cls(n, np.array(arcs, dtype=np.int64).reshape(-1, 2))

    def to_dimacs(self) -> str:
        """DIMACS-style text: 'p arc n m' then one 'a u v' line per arc, 1-based."""
        buf = io.StringIO()
        buf.write(f"p arc {self.n} {self.num_arcs}\n")
        np.savetxt(buf, self.arcs + 1, fmt="a %d %d")
        return buf.getvalue()

    @classmethod
    def from_dimacs(cls, text: str) -> Digraph:
        n, arcs = None, []
        for ln in text.splitlines():
            parts = ln.split()
            if not parts or parts[0] == "c":
                continue
            if parts[0] == "p":
                n = int(parts[2])
            elif parts[0] in ("a", "e"):
                arcs.append((int(parts[1]) - 1, int(parts[2]) - 1))
        if n is None:
            raise ValueError("missing problem line")
        return cls(n, np.array(arcs, dtype=np.int64).reshape(-1, 2))


def _transversal_table(g: PermGroup, alpha: int) -> np.ndarray:
    """Row x holds the images of a group element mapping alpha to x."""
    n = g.degree
    chain = g._chain
    lvl = chain.levels[0] if chain.levels else None
    table = np.empty((n, n), dtype=np.int64)
    ident = np.arange(n)
    if lvl is None:
        table[:] = ident
        return table
    # walk the Schreier tree breadth-first: rep(x) = rep(parent) * label
    table[alpha] = ident
    done = np.zeros(n, dtype=bool)
    done[alpha] = True
    frontier = [alpha]
    gens = [_inv(t) for t in lvl.tree_inv]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(s[x])
                if not done[y]:
                    done[y] = True
                    table[y] = s[table[x]]
                    nxt.append(y)
        frontier = nxt
    if not done.all():
        raise NotTransitiveError("group is not transitive")
    return table


def _inv(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    out[a] = np.arange(len(a))
    return out


def decompose(g: PermGroup, alpha: int = 0) -> OrbitalDecomposition:
    if not g.is_transitive():
        raise NotTransitiveError("orbital decomposition needs a transitive group")
    g = g.with_base([alpha])
    stab = g.stabilizer(alpha)
    orbs = sorted(stab.orbits(), key=lambda o: (len(o), o[0]))
    n = g.degree
    table = _transversal_table(g, alpha)
    index = np.empty(n, dtype=np.int64)
    for i, orb in enumerate(orbs):
        index[orb] = i
    pairing = []
    for orb in orbs:
        beta = orb[0]
        # h maps beta to alpha; alpha^h lies in the paired suborbit
        h = _inv(table[beta])
        pairing.append(int(index[h[alpha]]))
    table.setflags(write=False)
    return OrbitalDecomposition(alpha, orbs, pairing, n, table)


def _check_index(dec: OrbitalDecomposition, i: int) -> None:
    if not 1 <= i < dec.rank:
        raise IndexError(f"suborbit index {i} not in 1..{dec.rank - 1}")


def orbital_digraph(g: PermGroup, dec: OrbitalDecomposition, i: int) -> Digraph:
    """The orbital digraph (alpha, beta)^G for beta in suborbit i."""
    _check_index(dec, i)
    return generalized_orbital_digraph(g, dec, [i])


def generalized_orbital_digraph(g: PermGroup, dec: OrbitalDecomposition, indices: Iterable[int]) -> Digraph:
    s = sorted(set(int(i) for i in indices))
    if not s:
        raise ValueError("index set must be non-empty")
    for i in s:
        _check_index(dec, i)
    heads = np.concatenate([np.asarray(dec.suborbits[i], dtype=np.int64) for i in s])
    n = dec.degree
    targets = dec.transversal[:, heads]
    tails = np.repeat(np.arange(n), len(heads))
    return Digraph(n, np.stack([tails, targets.ravel()], axis=1))


def self_paired_check(dec: OrbitalDecomposition, i: int) -> bool:
    if not 0 <= i < dec.rank:
        raise IndexError(f"suborbit index {i} out of range")
    return dec.pairing[i] == i


def orbital_coloring(dec: OrbitalDecomposition) -> np.ndarray:
    """n x n matrix whose (x, y) entry is 1 + index of the orbital containing (x, y)."""
    n = dec.degree
    col = np.empty(n, dtype=np.int32)
    for i, orb in enumerate(dec.suborbits):
        col[orb] = i + 1
    m = np.empty((n, n), dtype=np.int32)
    rows = np.arange(n)[:, None]
    m[rows, dec.transversal] = col[None, :]
    return m


def pair_orbit_count(g: PermGroup) -> int:
    """Number of orbits on ordered pairs by union-find over n^2 points (small n only)."""
    n = g.degree
    parent = np.arange(n * n)

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h in g.generators:
        img = h.images
        pair_img = (img[:, None] * n + img[None, :]).ravel()
        for x in range(n * n):
            a, b = find(x), find(int(pair_img[x]))
            if a != b:
                parent[max(a, b)] = min(a, b)
    return len({find(x) for x in range(n * n)})


def digraph_admits(dg: Digraph, gens: Sequence) -> bool:
    """Every generator maps every arc to an arc."""
    adj = dg.adjacency()
    for h in gens:
        img = h.images
        if not adj[img[dg.arcs[:, 0]], img[dg.arcs[:, 1]]].all():
            return False
    return True
