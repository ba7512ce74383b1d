"""Finite digital images: vertex sets with a symmetric irreflexive adjacency.

A digital image is stored as a list of bitmask adjacency rows over vertex
indices 0..n-1, optionally decorated with integer lattice coordinates.
Coordinates are metadata only: every algorithm in the package consumes the
compiled bitmask rows, so geometric (c_u) and abstract (explicit edge list)
images go through one code path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetExceededError

Point = tuple[int, ...]


@dataclass(frozen=True)
class CuAdjacency:
    """Lattice adjacency: coordinates differ by at most 1 everywhere and by
    exactly 1 in between 1 and u places."""

    u: int


@dataclass(frozen=True)
class ExplicitAdjacency:
    """Adjacency given as an explicit set of unordered index pairs."""

    edges: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class ProductAdjacency:
    """Normal-product adjacency NP_u over a tuple of factor images."""

    u: int
    factors: tuple["DigitalImage", ...]


def cu_adjacent(x: Point, y: Point, u: int) -> bool:
    """c_u adjacency of two lattice points of the same dimension.

    True iff x != y, every coordinate differs by 0 or 1, and the number of
    coordinates differing by exactly 1 is at most u.
    """
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
    n = len(x)
    if not 1 <= u <= n:
        raise ValueError(f"u={u} out of range for dimension {n}")
    ones = 0
    for a, b in zip(x, y):
        d = abs(a - b)
        if d > 1:
            return False
        ones += d
    return 1 <= ones <= u


class DigitalImage:
    """An immutable digital image.

    adj[i] is a bitmask whose bit j is set iff vertex i is adjacent to
    vertex j.  The relation is validated to be symmetric and irreflexive.
    """

    __slots__ = ("name", "points", "adj", "spec", "_nbrs", "_ctx")

    def __init__(self, name, adj, points=None, spec=None):
        adj = tuple(int(m) for m in adj)
        n = len(adj)
        full = (1 << n) - 1
        for i, m in enumerate(adj):
            if m & ~full:
                raise ValueError(f"adjacency row {i} references vertices out of range")
            if (m >> i) & 1:
                raise ValueError(f"self-loop at vertex {i}")
        for i in range(n):
            m = adj[i]
            while m:
                b = m & -m
                m ^= b
                j = b.bit_length() - 1
                if not (adj[j] >> i) & 1:
                    raise ValueError(f"adjacency not symmetric at ({i},{j})")
        if points is not None:
            points = tuple(tuple(int(c) for c in p) for p in points)
            if len(points) != n:
                raise ValueError("number of points differs from adjacency size")
            if n and len({len(p) for p in points}) > 1:
                raise ValueError("points of mixed dimension")
            if len(set(points)) != n:
                raise ValueError("duplicate points")
            if isinstance(spec, CuAdjacency):
                for i in range(n):
                    for j in range(i + 1, n):
                        if cu_adjacent(points[i], points[j], spec.u) != bool((adj[i] >> j) & 1):
                            raise ValueError(
                                f"adjacency disagrees with c_{spec.u} at ({i},{j})"
                            )
        object.__setattr__(self, "name", str(name))
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "_nbrs", None)
        object.__setattr__(self, "_ctx", None)

    def __setattr__(self, key, value):
        raise AttributeError("DigitalImage is immutable")

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def dimension(self) -> int:
        if self.points is None or not self.points:
            return 0
        return len(self.points[0])

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def adjacent(self, i: int, j: int) -> bool:
        return bool((self.adj[i] >> j) & 1)

    def adjacent_or_equal(self, i: int, j: int) -> bool:
        return i == j or bool((self.adj[i] >> j) & 1)

    def neighbors(self, i: int) -> tuple[int, ...]:
        nbrs = self._nbrs
        if nbrs is None:
            nbrs = tuple(tuple(_bits(m)) for m in self.adj)
            object.__setattr__(self, "_nbrs", nbrs)
        return nbrs[i]

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()

    def open_mask(self, i: int) -> int:
        return self.adj[i]

    def nstar_mask(self, i: int) -> int:
        return self.adj[i] | (1 << i)

    def edge_list(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in self.neighbors(i) if i < j]

    def num_edges(self) -> int:
        return sum(self.degree(i) for i in range(self.n)) // 2

    def point_index(self, p: Point) -> int:
        if self.points is None:
            raise ValueError("image has no coordinates")
        try:
            return self.points.index(tuple(p))
        except ValueError:
            raise ValueError(f"point {tuple(p)} is not a vertex of {self.name}") from None

    def __repr__(self):
        return f"DigitalImage({self.name!r}, n={self.n}, edges={self.num_edges()})"


def _bits(m: int):
    while m:
        b = m & -m
        m ^= b
        yield b.bit_length() - 1


# -- constructors ---------------------------------------------------------


def build_image(points_or_size, spec, name="image") -> DigitalImage:
    """Build and validate an image from coordinates or an abstract size.

    Explicit edges are read as unordered pairs and symmetrized; duplicates
    are ignored; self-loops are rejected.  A CU spec requires coordinates.
    """
    if isinstance(spec, CuAdjacency):
        if isinstance(points_or_size, int):
            raise ValueError("CU adjacency requires coordinates")
        points = [tuple(p) for p in points_or_size]
        n = len(points)
        adj = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if cu_adjacent(points[i], points[j], spec.u):
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        return DigitalImage(name, adj, points=points, spec=spec)
    if isinstance(spec, ExplicitAdjacency):
        if isinstance(points_or_size, int):
            n = points_or_size
            points = None
        else:
            points = [tuple(p) for p in points_or_size]
            n = len(points)
        adj = [0] * n
        for e in spec.edges:
            i, j = e
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge {e} out of range for {n} vertices")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return DigitalImage(name, adj, points=points, spec=spec)
    if isinstance(spec, ProductAdjacency):
        return product(list(spec.factors), spec.u, name=name)
    raise TypeError(f"unknown adjacency spec {spec!r}")


def explicit(edges) -> ExplicitAdjacency:
    """Normalize an iterable of index pairs into an ExplicitAdjacency."""
    norm = set()
    for i, j in edges:
        if i == j:
            raise ValueError(f"self-loop at vertex {i}")
        norm.add((min(i, j), max(i, j)))
    return ExplicitAdjacency(frozenset(norm))


def product(factors, u: int, name=None) -> DigitalImage:
    """Normal product NP_u of a list of images.

    Vertices are tuples of factor indices in lexicographic order with the
    first factor slowest.  Two product vertices are adjacent iff between 1
    and u coordinate factors are adjacent and all other coordinates agree.
    """
    if not factors:
        raise ValueError("empty factor list")
    if not 1 <= u <= len(factors):
        raise ValueError(f"u={u} out of range for {len(factors)} factors")
    for f in factors:
        if f.n == 0:
            raise ValueError("empty factor image")
    tuples = list(itertools.product(*[range(f.n) for f in factors]))
    n = len(tuples)
    adj = [0] * n
    for a in range(n):
        ta = tuples[a]
        for b in range(a + 1, n):
            tb = tuples[b]
            diff = 0
            ok = True
            for f, i, j in zip(factors, ta, tb):
                if i != j:
                    if not f.adjacent(i, j):
                        ok = False
                        break
                    diff += 1
                    if diff > u:
                        ok = False
                        break
            if ok and diff >= 1:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    points = None
    if all(f.points is not None for f in factors):
        points = [sum((f.points[i] for f, i in zip(factors, t)), ()) for t in tuples]
        if len(set(points)) != n:
            points = None
    if name is None:
        name = f"NP_{u}(" + ",".join(f.name for f in factors) + ")"
    return DigitalImage(name, adj, points=points, spec=ProductAdjacency(u, tuple(factors)))


def wedge(a: DigitalImage, b: DigitalImage, a0: int, b0: int) -> DigitalImage:
    """Wedge of two images: disjoint union with a0 and b0 identified.

    The wedge point keeps index a0; vertices of b are appended after a's.
    """
    if not 0 <= a0 < a.n:
        raise ValueError(f"a0={a0} out of range")
    if not 0 <= b0 < b.n:
        raise ValueError(f"b0={b0} out of range")

    def b_index(j):
        if j == b0:
            return a0
        return a.n + j - (1 if j > b0 else 0)

    edges = set(a.edge_list())
    for i, j in b.edge_list():
        u_, v_ = b_index(i), b_index(j)
        edges.add((min(u_, v_), max(u_, v_)))
    name = f"wedge({a.name},{b.name})@{a0}"
    return build_image(a.n + b.n - 1, explicit(edges), name=name)


def disjoint_union(a: DigitalImage, b: DigitalImage) -> DigitalImage:
    """Disjoint union; b's vertex indices are shifted by a.n."""
    edges = set(a.edge_list())
    for i, j in b.edge_list():
        edges.add((i + a.n, j + a.n))
    points = None
    if a.points is not None and b.points is not None and a.dimension == b.dimension:
        combined = list(a.points) + list(b.points)
        if len(set(combined)) == a.n + b.n:
            points = combined
    img = build_image(points if points is not None else a.n + b.n,
                      explicit(edges), name=f"{a.name}+{b.name}")
    return img


def induced_subimage(image: DigitalImage, subset) -> tuple[DigitalImage, list[int]]:
    """Subimage on `subset` with the ambient adjacency restricted to it.

    Returns the subimage and the list mapping new indices to old ones.
    """
    keep = sorted(set(subset))
    for v in keep:
        if not 0 <= v < image.n:
            raise ValueError(f"vertex {v} out of range")
    pos = {v: i for i, v in enumerate(keep)}
    adj = [0] * len(keep)
    for i, v in enumerate(keep):
        for w in image.neighbors(v):
            if w in pos:
                adj[i] |= 1 << pos[w]
    points = None
    if image.points is not None:
        points = [image.points[v] for v in keep]
    sub = DigitalImage(f"{image.name}[{len(keep)}]", adj, points=points)
    return sub, keep


# -- graph queries ---------------------------------------------------------


def closed_neighborhood(image: DigitalImage, i: int) -> frozenset[int]:
    """N*(i): the vertex together with everything adjacent to it."""
    if not 0 <= i < image.n:
        raise ValueError(f"vertex {i} out of range")
    return frozenset(_bits(image.nstar_mask(i)))


def open_neighborhood(image: DigitalImage, i: int) -> frozenset[int]:
    """N(i): the vertices adjacent to i, excluding i itself."""
    if not 0 <= i < image.n:
        raise ValueError(f"vertex {i} out of range")
    return frozenset(image.neighbors(i))


def connected_components(image: DigitalImage) -> list[list[int]]:
    """BFS partition of the vertices, ordered by smallest contained index."""
    seen = 0
    comps = []
    for start in range(image.n):
        if (seen >> start) & 1:
            continue
        frontier = [start]
        seen |= 1 << start
        comp = [start]
        while frontier:
            nxt = []
            for v in frontier:
                for w in image.neighbors(v):
                    if not (seen >> w) & 1:
                        seen |= 1 << w
                        comp.append(w)
                        nxt.append(w)
            frontier = nxt
        comps.append(sorted(comp))
    return comps


def is_connected(image: DigitalImage) -> bool:
    return len(connected_components(image)) <= 1


def is_cycle_image(image: DigitalImage) -> bool:
    """True iff the image is isomorphic to a digital cycle C_n, n >= 3."""
    return (image.n >= 3 and is_connected(image)
            and all(image.degree(i) == 2 for i in range(image.n)))


def cycle_positions(image: DigitalImage) -> list[int]:
    """Vertices of a cycle image in traversal order starting at vertex 0."""
    if not is_cycle_image(image):
        raise ValueError("not a cycle image")
    order = [0]
    prev = None
    cur = 0
    while len(order) < image.n:
        nxt = [w for w in image.neighbors(cur) if w != prev]
        prev, cur = cur, min(nxt)
        order.append(cur)
    return order


def are_isomorphic(a: DigitalImage, b: DigitalImage, max_vertices: int = 24):
    """Search for an adjacency-preserving bijection from a to b.

    Returns the witness as a list mapping a-indices to b-indices, or None.
    Degree-sequence pruning plus backtracking; intended for small images.
    """
    if a.n > max_vertices or b.n > max_vertices:
        raise BudgetExceededError(
            f"isomorphism search limited to {max_vertices} vertices")
    if a.n != b.n or a.num_edges() != b.num_edges():
        return None
    deg_a = [a.degree(i) for i in range(a.n)]
    deg_b = [b.degree(i) for i in range(b.n)]
    if sorted(deg_a) != sorted(deg_b):
        return None
    n = a.n
    order = sorted(range(n), key=lambda v: (-deg_a[v], v))
    mapping = [-1] * n
    used = [False] * n

    def rec(pos):
        if pos == n:
            return True
        v = order[pos]
        for w in range(n):
            if used[w] or deg_b[w] != deg_a[v]:
                continue
            ok = True
            for p in range(pos):
                u = order[p]
                if a.adjacent(v, u) != b.adjacent(w, mapping[u]):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used[w] = True
            if rec(pos + 1):
                return True
            used[w] = False
            mapping[v] = -1
        return False

    if rec(0):
        return list(mapping)
    return None
