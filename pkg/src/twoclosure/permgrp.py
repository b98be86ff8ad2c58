"""Permutations of {0..n-1} and permutation groups with a base and strong
generating set.

Permutations act on the right: ``(g * h)(x) = h(g(x))``.  A group's BSGS is
built by randomized Schreier-Sims with a fixed seed and then either verified
deterministically (every Schreier generator sifts) or certified by a known
order.  Basic transversals are stored as Schreier vectors: for every orbit
point only the label of the generator that reached it is kept, and coset
representatives are unwound on demand.
"""
from __future__ import annotations

import logging
import math
import random
from collections.abc import Iterable, Sequence

import numpy as np
from numba import njit

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20_240_917
#: consecutive trivial sifts before the random phase hands over to verification
RANDOM_STOP = 40


class DegreeError(ValueError):
    pass


class NotTransitiveError(ValueError):
    pass


def _as_images(images, n: int | None = None) -> np.ndarray:
    a = np.asarray(images, dtype=np.int64)
    if a.ndim != 1:
        raise ValueError("permutation images must be one-dimensional")
    if n is not None and len(a) != n:
        raise DegreeError(f"expected degree {n}, got {len(a)}")
    return a


class Permutation:
    """A bijection of {0..n-1} stored as its image array."""

    __slots__ = ("_a",)

    def __init__(self, images, *, check: bool = True):
        a = _as_images(images)
        if check:
            seen = np.zeros(len(a), dtype=bool)
            if len(a) and (a.min() < 0 or a.max() >= len(a)):
                raise ValueError("image out of range")
            seen[a] = True
            if not seen.all():
                raise ValueError("images are not a bijection")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(np.arange(n), check=False)

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> Permutation:
        a = np.arange(n)
        for cyc in cycles:
            for i, x in enumerate(cyc):
                a[x] = cyc[(i + 1) % len(cyc)]
        return cls(a)

    @property
    def images(self) -> np.ndarray:
        return self._a

    @property
    def degree(self) -> int:
        return len(self._a)

    def __call__(self, x: int) -> int:
        return int(self._a[x])

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise DegreeError("degree mismatch")
        return Permutation(other._a[self._a], check=False)

    def inverse(self) -> Permutation:
        inv = np.empty_like(self._a)
        inv[self._a] = np.arange(len(self._a))
        return Permutation(inv, check=False)

    def __pow__(self, e: int) -> Permutation:
        result = np.arange(self.degree)
        base = self._a if e >= 0 else self.inverse()._a
        e = abs(e)
        while e:
            if e & 1:
                result = base[result]
            base = base[base]
            e >>= 1
        return Permutation(result, check=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return np.array_equal(self._a, other._a)

    def __hash__(self) -> int:
        return hash(self._a.tobytes())

    def is_identity(self) -> bool:
        return bool((self._a == np.arange(len(self._a))).all())

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.degree else 1

    def cycles(self) -> list[tuple[int, ...]]:
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = int(self._a[i])
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = int(self._a[j])
            out.append(tuple(cyc))
        return out

    def tolist(self) -> list[int]:
        return self._a.tolist()

    def __repr__(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"
        return f"Permutation<{self.degree}>{body}"


def _inverse(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(len(a))
    return inv


@njit(cache=True)
def _sift_kernel(g, base, labels, tinv, start):
    n = g.shape[0]
    h = g.copy()
    tmp = np.empty(n, dtype=np.int64)
    for i in range(start, base.shape[0]):
        b0 = base[i]
        b = h[b0]
        lab = labels[i]
        if lab[b] == -1:
            return h, i
        while b != b0:
            inv = tinv[lab[b]]
            for x in range(n):
                tmp[x] = inv[h[x]]
            h, tmp = tmp, h
            b = inv[b]
    return h, base.shape[0]


@njit(cache=True)
def _bfs_kernel(root, tree, n):
    """Schreier vector of root's orbit; returns (label, orbit in BFS order, depth)."""
    label = np.full(n, -1, dtype=np.int64)
    label[root] = -2
    queue = np.empty(n, dtype=np.int64)
    dist = np.zeros(n, dtype=np.int64)
    queue[0] = root
    head, tail = 0, 1
    depth = 0
    while head < tail:
        x = queue[head]
        head += 1
        for k in range(tree.shape[0]):
            y = tree[k, x]
            if label[y] == -1:
                label[y] = k
                dist[y] = dist[x] + 1
                if dist[y] > depth:
                    depth = dist[y]
                queue[tail] = y
                tail += 1
    return label, queue[:tail].copy(), depth


class _Level:
    __slots__ = ("point", "gens", "tree_inv", "label", "orbit")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[int] = []  # indices into the chain's strong generators
        self.tree_inv: list[np.ndarray] = []  # inverses of the Schreier tree labels
        self.label: np.ndarray | None = None
        self.orbit: np.ndarray | None = None


class _Chain:
    """Stabilizer chain: base points, strong generators, Schreier vectors."""

    def __init__(self, n: int, base: Sequence[int] = ()):
        self.n = n
        self.strong: list[np.ndarray] = []
        self.levels: list[_Level] = [_Level(int(b)) for b in base]
        self._ident = np.arange(n, dtype=np.int64)
        self._packed = None
        for lvl in self.levels:
            self._rebuild(lvl)

    @property
    def base(self) -> list[int]:
        return [lvl.point for lvl in self.levels]

    def order(self) -> int:
        return math.prod(len(lvl.orbit) for lvl in self.levels)

    def _rebuild(self, lvl: _Level) -> None:
        n = self.n
        self._packed = None
        tree = [self.strong[k] for k in lvl.gens]
        for _ in range(64):
            stacked = np.array(tree, dtype=np.int64) if tree else np.empty((0, n), dtype=np.int64)
            label, orbit, depth = _bfs_kernel(lvl.point, stacked, n)
            limit = 2 * max(1, math.ceil(math.log2(len(orbit)))) + 2
            lvl.tree_inv, lvl.label = [_inverse(t) for t in tree], label
            if depth <= limit:
                break
            # shortcut: add the coset representative of a deepest point
            deep = int(orbit[-1])
            tree = tree + [_inverse(self.coset_rep_inv(lvl, deep))]
        lvl.orbit = np.sort(orbit)

    def _pack(self):
        if self._packed is None:
            rows, labels, offset = [], [], 0
            for lvl in self.levels:
                lab = lvl.label.copy()
                lab[lab >= 0] += offset
                labels.append(lab)
                rows.extend(lvl.tree_inv)
                offset += len(lvl.tree_inv)
            n = self.n
            self._packed = (
                np.array(self.base, dtype=np.int64),
                np.array(labels, dtype=np.int64).reshape(len(labels), n),
                np.array(rows, dtype=np.int64).reshape(len(rows), n),
            )
        return self._packed

    def coset_rep_inv(self, lvl: _Level, beta: int) -> np.ndarray:
        """u_beta^-1 where u_beta maps the level's base point to beta."""
        w = self._ident
        b = beta
        label = lvl.label
        while b != lvl.point:
            inv = lvl.tree_inv[label[b]]
            w = inv[w]
            b = int(inv[b])
        return w

    def sift(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        base, labels, tinv = self._pack()
        h, i = _sift_kernel(np.asarray(g, dtype=np.int64), base, labels, tinv, start)
        return h, int(i)

    def insert(self, h: np.ndarray, j: int) -> None:
        """Add residue ``h`` (fixing base[:j]) as a strong generator."""
        if j == len(self.levels):
            moved = np.nonzero(h != self._ident)[0]
            self.levels.append(_Level(int(moved[0])))
        k = len(self.strong)
        self.strong.append(h)
        for i in range(j + 1):
            self.levels[i].gens.append(k)
            self._rebuild(self.levels[i])

    def is_identity(self, g: np.ndarray) -> bool:
        return bool((g == self._ident).all())

    def tail(self, j: int) -> _Chain:
        """Chain of the pointwise stabilizer of base[:j]; shares level data."""
        out = _Chain.__new__(_Chain)
        out.n, out.strong, out.levels = self.n, self.strong, self.levels[j:]
        out._ident, out._packed = self._ident, None
        return out

    def level_generators(self, j: int) -> list[np.ndarray]:
        if j >= len(self.levels):
            return []
        return [self.strong[k] for k in self.levels[j].gens]

    def sift_insert(self, g: np.ndarray) -> bool:
        h, j = self.sift(g)
        if self.is_identity(h):
            return False
        self.insert(h, j)
        return True

    def verify(self) -> None:
        """Deterministic Schreier-Sims check; extends the chain until complete."""
        i = len(self.levels) - 1
        while i >= 0:
            lvl = self.levels[i]
            base, labels, tinv = self._pack()
            gens = np.array([self.strong[k] for k in lvl.gens], dtype=np.int64).reshape(-1, self.n)
            h, j = _verify_level_kernel(i, lvl.orbit, gens, base, labels, tinv)
            if j >= 0:
                self.insert(h, int(j))
                i = len(self.levels) - 1
                continue
            i -= 1


@njit(cache=True)
def _verify_level_kernel(i, orbit, gens, base, labels, tinv):
    """Sift every Schreier generator of level i; return the first residue."""
    n = labels.shape[1]
    ident = np.arange(n)
    b0 = base[i]
    lab = labels[i]
    w = np.empty(n, dtype=np.int64)
    u = np.empty(n, dtype=np.int64)
    for beta in orbit:
        for x in range(n):
            w[x] = x
        b = beta
        while b != b0:
            inv = tinv[lab[b]]
            for x in range(n):
                w[x] = inv[w[x]]
            b = inv[b]
        for x in range(n):
            u[w[x]] = x
        for k in range(gens.shape[0]):
            s = gens[k]
            g = np.empty(n, dtype=np.int64)
            for x in range(n):
                g[x] = s[u[x]]
            h, j = _sift_kernel(g, base, labels, tinv, i)
            for x in range(n):
                if h[x] != ident[x]:
                    return h, j
    return ident, -1


class _RandomSource:
    """Product replacement random elements with a seeded RNG."""

    def __init__(self, gens: list[np.ndarray], n: int, seed: int):
        self.rng = random.Random(seed)
        state = list(gens) or [np.arange(n)]
        while len(state) < 10:
            state = state + state
        self.state = [s.copy() for s in state[:max(10, len(state))]]
        self.acc = np.arange(n)
        for _ in range(50):
            self.next()

    def next(self) -> np.ndarray:
        st = self.state
        i, j = self.rng.sample(range(len(st)), 2)
        if self.rng.random() < 0.5:
            st[i] = st[j][st[i]]
        else:
            st[i] = st[i][st[j]]
        self.acc = st[i][self.acc]
        return self.acc


def _build_chain(
    gens: list[np.ndarray],
    n: int,
    base: Sequence[int] = (),
    order: int | None = None,
    seed: int = DEFAULT_SEED,
) -> _Chain:
    chain = _Chain(n, base)
    for g in gens:
        chain.sift_insert(g)
    if order is not None and chain.order() == order:
        return chain
    src = _RandomSource(gens, n, seed)
    quiet = 0
    while quiet < RANDOM_STOP:
        if order is not None and chain.order() >= order:
            break
        if chain.sift_insert(src.next()):
            quiet = 0
        else:
            quiet += 1
    if order is None or chain.order() != order:
        chain.verify()
    if order is not None and chain.order() != order:
        raise ValueError(f"claimed order {order} but BSGS gives {chain.order()}")
    return chain


class PermGroup:
    """A permutation group of degree n given by generators."""

    def __init__(
        self,
        generators: Iterable,
        degree: int | None = None,
        *,
        base: Sequence[int] = (),
        order: int | None = None,
        seed: int = DEFAULT_SEED,
    ):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise DegreeError("degree required for a group without generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeError(f"generator of degree {g.degree} in a group of degree {degree}")
        self.degree = degree
        self.generators = [g for g in gens if not g.is_identity()]
        self._seed = seed
        self._chain = _build_chain(
            [g.images for g in self.generators], degree, base, order, seed
        )

    # --- basic data -------------------------------------------------------
    @property
    def base(self) -> list[int]:
        return self._chain.base

    def strong_generators(self) -> list[Permutation]:
        return [Permutation(s, check=False) for s in self._chain.strong]

    def basic_orbit_lengths(self) -> list[int]:
        return [len(lvl.orbit) for lvl in self._chain.levels]

    def order(self) -> int:
        return self._chain.order()

    def __len__(self) -> int:  # pragma: no cover - int overflow for big groups
        return self.order()

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order()})"

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [g.tolist() for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> PermGroup:
        return cls([Permutation(g) for g in data["generators"]], int(data["degree"]))

    # --- membership -------------------------------------------------------
    def sift(self, g: Permutation) -> Permutation:
        h, _ = self._chain.sift(g.images)
        return Permutation(h, check=False)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        h, _ = self._chain.sift(g.images)
        return self._chain.is_identity(h)

    __contains__ = contains

    def contains_group(self, other: PermGroup) -> bool:
        return all(self.contains(g) for g in other.generators)

    def random_element(self, rng: random.Random) -> Permutation:
        """Uniform random element via the stabilizer chain."""
        g = np.arange(self.degree)
        for lvl in reversed(self._chain.levels):
            beta = int(rng.choice(lvl.orbit))
            u = _inverse(self._chain.coset_rep_inv(lvl, beta))
            g = u[g]
        return Permutation(g, check=False)

    # --- orbits -----------------------------------------------------------
    def orbit(self, point: int) -> list[int]:
        return sorted(int(x) for x in _orbit(self.generators, self.degree, point))

    def orbits(self) -> list[list[int]]:
        return orbits_of(self.generators, self.degree)

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(_orbit(self.generators, self.degree, 0)) == self.degree

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order() == self.degree

    def with_base(self, prefix: Sequence[int]) -> PermGroup:
        """Same group, BSGS rebuilt with the given base prefix."""
        if list(prefix) == self.base[: len(prefix)]:
            return self
        return PermGroup(
            self.generators, self.degree, base=prefix, order=self.order(), seed=self._seed
        )

    def stabilizer(self, point: int) -> PermGroup:
        return self.pointwise_stabilizer([point])

    def pointwise_stabilizer(self, points: Sequence[int]) -> PermGroup:
        g = self.with_base(points)
        return g._from_chain(g._chain.tail(len(points)))

    def _from_chain(self, chain: _Chain) -> PermGroup:
        out = PermGroup.__new__(PermGroup)
        out.degree, out._seed, out._chain = self.degree, self._seed, chain
        out.generators = [Permutation(s, check=False) for s in chain.level_generators(0)]
        return out

    def transversal_element(self, point: int) -> Permutation:
        """An element mapping the first base point to ``point``."""
        lvl = self._chain.levels[0]
        if lvl.label[point] == -1:
            raise ValueError(f"{point} not in the orbit of {lvl.point}")
        return Permutation(_inverse(self._chain.coset_rep_inv(lvl, point)), check=False)

    def transversal_images(self, point: int, targets: np.ndarray) -> np.ndarray:
        lvl = self._chain.levels[0]
        return _inverse(self._chain.coset_rep_inv(lvl, point))[targets]

    # --- structure --------------------------------------------------------
    def is_primitive(self) -> bool:
        """Higman's criterion: every non-trivial orbital digraph is connected."""
        if not self.is_transitive():
            raise NotTransitiveError("primitivity is only defined for transitive groups")
        n = self.degree
        if n <= 2:
            return True
        g = self.with_base([0])
        stab_orbits = g.stabilizer(0).orbits()
        suborbit_of = np.empty(n, dtype=np.int64)
        for i, orb in enumerate(stab_orbits):
            suborbit_of[orb] = i
        for orb in stab_orbits:
            beta = orb[0]
            if beta == 0:
                continue
            paired = suborbit_of[int(g.transversal_element(beta).inverse()(0))]
            nbrs = np.unique(np.array(orb + stab_orbits[paired]))
            if _component_size(g, nbrs) < n:
                return False
        return True

    def conjugate(self, g: Permutation) -> PermGroup:
        """g^-1 G g."""
        ginv = g.inverse()
        return PermGroup(
            [ginv * h * g for h in self.generators], self.degree, order=self.order(), seed=self._seed
        )

    def closure_with(self, extra: Iterable[Permutation]) -> PermGroup:
        return PermGroup(list(self.generators) + list(extra), self.degree, seed=self._seed)

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return other.contains_group(self)


def _orbit(gens: Sequence[Permutation], n: int, point: int) -> np.ndarray:
    seen = np.zeros(n, dtype=bool)
    seen[point] = True
    frontier = np.array([point])
    while len(frontier):
        nxt = []
        for g in gens:
            img = g.images[frontier]
            img = img[~seen[img]]
            if len(img):
                img = np.unique(img)
                seen[img] = True
                nxt.append(img)
        frontier = np.concatenate(nxt) if nxt else np.array([], dtype=np.int64)
    return np.nonzero(seen)[0]


def orbits_of(gens: Sequence[Permutation], n: int) -> list[list[int]]:
    """Orbits as sorted lists, ordered by least element."""
    comp = np.full(n, -1, dtype=np.int64)
    out = []
    for x in range(n):
        if comp[x] >= 0:
            continue
        orb = _orbit(gens, n, x)
        comp[orb] = len(out)
        out.append(orb.tolist())
    return out


def _component_size(g: PermGroup, nbrs: np.ndarray) -> int:
    """Size of the component of 0 in the graph x ~ nbrs^(t_x), t_x: 0 -> x."""
    n = g.degree
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        x = stack.pop()
        img = g.transversal_images(x, nbrs)
        new = img[~seen[img]]
        if len(new):
            seen[new] = True
            count += len(new)
            if count == n:
                return n
            stack.extend(new.tolist())
    return count


def minimal_block(g: PermGroup, points: Sequence[int]) -> list[int]:
    """Smallest block containing ``points`` (Atkinson's union-find fusion)."""
    n = g.degree
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = [h.images.tolist() for h in g.generators]
    queue = []
    a0 = points[0]
    for b in points[1:]:
        ra, rb = find(a0), find(b)
        if ra != rb:
            parent[rb] = ra
            queue.append((a0, b))
    while queue:
        a, b = queue.pop()
        for h in gens:
            ra, rb = find(h[a]), find(h[b])
            if ra != rb:
                parent[rb] = ra
                queue.append((h[a], h[b]))
    root = find(a0)
    return [x for x in range(n) if find(x) == root]


def is_primitive_by_blocks(g: PermGroup) -> bool:
    """Primitivity via minimal blocks {0, b}; independent of Higman's test."""
    if not g.is_transitive():
        raise NotTransitiveError("primitivity is only defined for transitive groups")
    n = g.degree
    stab = g.stabilizer(0)
    for orb in stab.orbits():
        if orb[0] == 0:
            continue
        if len(minimal_block(g, [0, orb[0]])) < n:
            return False
    return True


# functional aliases ---------------------------------------------------------

def group(gens: Iterable, n: int | None = None, **kw) -> PermGroup:
    return PermGroup(gens, n, **kw)


def order(g: PermGroup) -> int:
    return g.order()


def contains(g: PermGroup, h: Permutation) -> bool:
    return g.contains(h)


def orbit(g: PermGroup, point: int) -> list[int]:
    return g.orbit(point)


def stabilizer(g: PermGroup, point: int) -> PermGroup:
    return g.stabilizer(point)


def is_transitive(g: PermGroup) -> bool:
    return g.is_transitive()


def is_regular(g: PermGroup) -> bool:
    return g.is_regular()


def is_primitive(g: PermGroup) -> bool:
    return g.is_primitive()


def conjugate_group(g: PermGroup, h: Permutation) -> PermGroup:
    return g.conjugate(h)


def closure_with(g: PermGroup, extra: Iterable[Permutation]) -> PermGroup:
    return g.closure_with(extra)


def symmetric_group(n: int) -> PermGroup:
    if n <= 1:
        return PermGroup([], max(n, 1))
    gens = [Permutation.from_cycles(n, (0, 1))]
    if n > 2:
        gens.append(Permutation.from_cycles(n, tuple(range(n))))
    return PermGroup(gens, n, order=math.factorial(n))


def alternating_group(n: int) -> PermGroup:
    if n <= 2:
        return PermGroup([], max(n, 1))
    gens = [Permutation.from_cycles(n, (i, i + 1, i + 2)) for i in range(n - 2)]
    return PermGroup(gens, n, order=math.factorial(n) // 2)


def cyclic_group(n: int) -> PermGroup:
    return PermGroup([Permutation.from_cycles(n, tuple(range(n)))], n)
