"""Where fixed points must sit: geodesics, forced fixed points, articulation
points, and the connectivity structure of Fix(f)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import PropertyViolationError
from .image import (DigitalImage, connected_components, cycle_positions,
                    is_cycle_image, is_connected)
from .selfmap import SelfMap


@dataclass(frozen=True)
class PathWitness:
    """A concrete path: consecutive vertices adjacent, length = edges."""

    vertices: tuple[int, ...]

    def __len__(self):
        return len(self.vertices) - 1

    def is_valid(self, image: DigitalImage) -> bool:
        vs = self.vertices
        return bool(vs) and all(image.adjacent(a, b) for a, b in zip(vs, vs[1:]))


@dataclass(frozen=True)
class GeodesicInfo:
    distance: int
    paths: tuple[PathWitness, ...]
    truncated: bool
    on_all_geodesics: frozenset[int]


def _bfs_layers(image, src):
    dist = [-1] * image.n
    count = [0] * image.n
    dist[src] = 0
    count[src] = 1
    frontier = [src]
    while frontier:
        nxt = []
        for v in frontier:
            for w in image.neighbors(v):
                if dist[w] == -1:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
                if dist[w] == dist[v] + 1:
                    count[w] += count[v]
        frontier = nxt
    return dist, count


def minimal_paths(image: DigitalImage, x: int, y: int,
                  max_paths: int = 10_000) -> GeodesicInfo:
    """BFS distance, the geodesics themselves (capped, with a truncation
    flag), and the set of vertices lying on every geodesic."""
    for v in (x, y):
        if not 0 <= v < image.n:
            raise ValueError(f"vertex {v} out of range")
    dist_x, count_x = _bfs_layers(image, x)
    if dist_x[y] == -1:
        raise ValueError(f"vertices {x} and {y} are in different components")
    dist_y, count_y = _bfs_layers(image, y)
    d = dist_x[y]
    total = count_x[y]
    on_all = frozenset(v for v in range(image.n)
                       if dist_x[v] + dist_y[v] == d
                       and count_x[v] * count_y[v] == total)

    paths = []
    truncated = False
    stack = [x]

    def rec(v):
        nonlocal truncated
        if truncated:
            return
        if v == y:
            paths.append(PathWitness(tuple(stack)))
            if len(paths) >= max_paths:
                truncated = True
            return
        t = dist_x[v]
        for w in image.neighbors(v):
            if dist_x[w] == t + 1 and dist_y[w] == d - t - 1:
                stack.append(w)
                rec(w)
                stack.pop()

    rec(x)
    return GeodesicInfo(d, tuple(paths), truncated, on_all)


def _on_all_geodesics(image, x, y):
    """Vertex set on every x-y geodesic, or None for a disconnected pair."""
    dist_x, count_x = _bfs_layers(image, x)
    if dist_x[y] == -1:
        return None
    dist_y, count_y = _bfs_layers(image, y)
    d = dist_x[y]
    total = count_x[y]
    return frozenset(v for v in range(image.n)
                     if dist_x[v] + dist_y[v] == d
                     and count_x[v] * count_y[v] == total)


def forced_fixed_points(f: SelfMap):
    """Closure of Fix(f) under "on every geodesic between two marked points".

    Returns (forced set, confirmed) where confirmed says the forced set is
    contained in the actual fixed point set.  This is a theorem-checking
    instrument: it recomputes the prediction rather than trusting it.
    """
    image = f.image
    fix = f.fix_set()
    forced = set(fix)
    memo = {}
    changed = True
    while changed:
        changed = False
        for p, q in itertools.combinations(sorted(forced), 2):
            key = (p, q)
            if key not in memo:
                memo[key] = _on_all_geodesics(image, p, q)
            extra = memo[key]
            if extra is not None and not extra <= forced:
                forced |= extra
                changed = True
    return frozenset(forced), forced <= fix


def articulation_points(image: DigitalImage) -> frozenset[int]:
    """Vertices whose removal disconnects their component."""
    arts = set()
    for comp in connected_components(image):
        if len(comp) <= 2:
            continue
        comp_set = set(comp)
        for v in comp:
            rest = comp_set - {v}
            start = min(rest)
            seen = {start}
            frontier = [start]
            while frontier:
                nxt = []
                for a in frontier:
                    for b in image.neighbors(a):
                        if b in rest and b not in seen:
                            seen.add(b)
                            nxt.append(b)
                frontier = nxt
            if len(seen) != len(rest):
                arts.add(v)
    return frozenset(arts)


def articulation_forces_fixed(f: SelfMap) -> bool:
    """Check: an articulation point separating two fixed points is fixed."""
    image = f.image
    fix = f.fix_set()
    for v in articulation_points(image):
        comp = next(c for c in connected_components(image) if v in c)
        rest = set(comp) - {v}
        pieces = []
        while rest:
            start = min(rest)
            seen = {start}
            frontier = [start]
            while frontier:
                nxt = []
                for a in frontier:
                    for b in image.neighbors(a):
                        if b in rest and b not in seen:
                            seen.add(b)
                            nxt.append(b)
                frontier = nxt
            pieces.append(seen)
            rest -= seen
        holding = sum(1 for piece in pieces if piece & fix)
        if holding >= 2 and v not in fix:
            return False
    return True


@dataclass(frozen=True)
class FixStructure:
    kind: str  # "empty" | "connected" | "disconnected"
    fixed: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    cycle_antipodal: bool | None  # set on cycle images with disconnected fix


def fix_structure(f: SelfMap) -> FixStructure:
    """Classify the connectivity of Fix(f) inside the image.

    On a cycle image a disconnected fixed point set must be an antipodal
    pair with even length; any other shape raises PropertyViolationError.
    """
    image = f.image
    fixed = tuple(sorted(f.fix_set()))
    if not fixed:
        return FixStructure("empty", (), (), None)
    fix_set = set(fixed)
    comps = []
    rest = set(fixed)
    while rest:
        start = min(rest)
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for a in frontier:
                for b in image.neighbors(a):
                    if b in fix_set and b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        comps.append(tuple(sorted(seen)))
        rest -= seen
    comps.sort()
    if len(comps) == 1:
        return FixStructure("connected", fixed, tuple(comps), None)
    antipodal = None
    if is_cycle_image(image):
        n = image.n
        ring = cycle_positions(image)
        place = {v: i for i, v in enumerate(ring)}
        ok = len(fixed) == 2 and n % 2 == 0
        if ok:
            gap = (place[fixed[0]] - place[fixed[1]]) % n
            ok = gap == n // 2
        if not ok:
            raise PropertyViolationError(
                f"disconnected fixed set {fixed} on a cycle is not an "
                f"antipodal pair; map {list(f.targets)}")
        antipodal = True
    return FixStructure("disconnected", fixed, tuple(comps), antipodal)
