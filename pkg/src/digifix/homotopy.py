"""Homotopy of self-maps: one-step neighbors, classes, S(f), and rigidity.

A homotopy between continuous maps is normalized to a chain of one-step
homotopies (consecutive maps pointwise adjacent-or-equal), so a homotopy
class is exactly a connected component of the one-step map graph.  Classes
are explored by BFS whose neighbor generation is itself a constrained
backtracking search.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass

from .errors import BudgetExceededError
from .image import DigitalImage
from .search import context_for, enumerate_maps, exists_other_map
from .selfmap import SelfMap, identity_map, same_space
from .spectrum import EnumerationStats, Spectrum

DEFAULT_CLASS_BUDGET = 10**6


@dataclass(frozen=True)
class HomotopyPath:
    """A checkable homotopy certificate: a chain of continuous self-maps in
    which consecutive maps are pointwise adjacent-or-equal."""

    steps: tuple[SelfMap, ...]


def verify_homotopy_path(path) -> bool:
    """Check both certificate invariants; accepts a HomotopyPath or any
    sequence of SelfMap."""
    steps = path.steps if isinstance(path, HomotopyPath) else tuple(path)
    if not steps:
        return False
    first = steps[0]
    for m in steps:
        if not same_space(m, first) or not m.is_continuous():
            return False
    for a, b in zip(steps, steps[1:]):
        if not _pointwise_close(a.image, a.targets, b.targets):
            return False
    return True


def _pointwise_close(image, s, t) -> bool:
    adj = image.adj
    for i in range(image.n):
        a, b = s[i], t[i]
        if a != b and not (adj[a] >> b) & 1:
            return False
    return True


def one_step_homotopic(f: SelfMap, g: SelfMap) -> bool:
    """Both maps continuous and pointwise adjacent-or-equal."""
    if not same_space(f, g):
        raise ValueError("maps are on different images")
    return (f.is_continuous() and g.is_continuous()
            and _pointwise_close(f.image, f.targets, g.targets))


@dataclass
class HomotopyClass:
    """One homotopy class: its fix-count spectrum S(f), size, and members.

    Member sets are retained only while the class stays below
    `max_members`; fix_counts equals S(f) exactly when complete is True.
    """

    representative: SelfMap
    fix_counts: Spectrum
    size: int
    complete: bool
    members: frozenset[tuple[int, ...]] | None

    @property
    def min_fixed(self) -> int:
        return self.fix_counts.values[0]

    @property
    def max_fixed(self) -> int:
        return self.fix_counts.values[-1]

    def __contains__(self, m: SelfMap) -> bool:
        if self.members is None:
            raise ValueError("class membership list was not retained")
        return tuple(m.targets) == self.representative.targets or m.targets in self.members


def _neighbor_targets(image, ctx, targets):
    """All continuous g with g(x) in N*(f(x)) for every x: the one-step
    neighbors of f (including f itself)."""
    base = [ctx.nstar[t] for t in targets]
    out = []
    _maps, nodes, _trunc = enumerate_maps(ctx, base, lambda f: out.append(tuple(f)))
    return out, nodes


def homotopy_class(f: SelfMap, budget: int = DEFAULT_CLASS_BUDGET,
                   max_members: int = DEFAULT_CLASS_BUDGET,
                   stats: EnumerationStats | None = None) -> HomotopyClass:
    """BFS of the one-step map graph from f.

    Budget exhaustion is reported in-band: complete=False with the partial
    data gathered so far.
    """
    if not f.is_continuous():
        raise ValueError("homotopy classes are defined for continuous maps")
    image = f.image
    ctx = context_for(image)
    t0 = time.perf_counter()
    start = tuple(f.targets)
    visited = {start}
    queue = deque([start])
    nodes_total = 0
    complete = True
    while queue:
        cur = queue.popleft()
        nbrs, nodes = _neighbor_targets(image, ctx, cur)
        nodes_total += nodes
        for nb in nbrs:
            if nb not in visited:
                if len(visited) >= budget:
                    complete = False
                    queue.clear()
                    break
                visited.add(nb)
                queue.append(nb)
        if not complete:
            break
    fix_counts = Spectrum.of(sum(1 for i, t in enumerate(m) if i == t)
                             for m in visited)
    rep = SelfMap(image, min(visited))
    members = frozenset(visited) if len(visited) <= max_members else None
    if stats is not None:
        stats.maps_enumerated += len(visited)
        stats.nodes_visited += nodes_total
        stats.elapsed += time.perf_counter() - t0
        stats.truncated |= not complete
    return HomotopyClass(rep, fix_counts, len(visited), complete, members)


def homotopic(f: SelfMap, g: SelfMap, budget: int = DEFAULT_CLASS_BUDGET):
    """Whether f and g are homotopic; None if the budget ran out first."""
    if not same_space(f, g):
        raise ValueError("maps are on different images")
    if not (f.is_continuous() and g.is_continuous()):
        return False
    image = f.image
    ctx = context_for(image)
    start, goal = tuple(f.targets), tuple(g.targets)
    if start == goal:
        return True
    visited = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        nbrs, _nodes = _neighbor_targets(image, ctx, cur)
        for nb in nbrs:
            if nb == goal:
                return True
            if nb not in visited:
                if len(visited) >= budget:
                    return None
                visited.add(nb)
                queue.append(nb)
    return False


def is_rigid_map(f: SelfMap, budget: int | None = None) -> bool:
    """No continuous map other than f itself is one step from f.

    That suffices for rigidity: any map homotopic to f is reachable through
    one-step neighbors, so a lone map has a lone class.
    """
    if not f.is_continuous():
        raise ValueError("rigidity is defined for continuous maps")
    ctx = context_for(f.image)
    base = [ctx.nstar[t] for t in f.targets]
    witness, _nodes = exists_other_map(ctx, base, f.targets, node_limit=budget)
    return witness is None


def is_rigid_image(image: DigitalImage) -> bool:
    """The identity map admits no one-step neighbor besides itself."""
    if image.n == 0:
        return True
    return is_rigid_map(identity_map(image))


def homotopy_classes(image: DigitalImage, budget: int = DEFAULT_CLASS_BUDGET,
                     stats: EnumerationStats | None = None) -> list[HomotopyClass]:
    """Partition all continuous self-maps into homotopy classes.

    Enumerates the whole of C(X), then runs union-find over the one-step
    relation.  Exceeding the budget raises; a partial census would be
    useless as a census.
    """
    t0 = time.perf_counter()
    ctx = context_for(image)
    all_maps: list[tuple[int, ...]] = []
    base = [ctx.full_mask] * image.n if image.n else []

    def visit(f):
        if len(all_maps) >= budget:
            raise BudgetExceededError(
                f"more than {budget} continuous self-maps", nodes=len(all_maps))
        all_maps.append(tuple(f))

    _maps, nodes_total, _trunc = enumerate_maps(ctx, base, visit)
    index = {m: i for i, m in enumerate(all_maps)}
    parent = list(range(len(all_maps)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, m in enumerate(all_maps):
        nbrs, nodes = _neighbor_targets(image, ctx, m)
        nodes_total += nodes
        for nb in nbrs:
            ri, rj = find(i), find(index[nb])
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)

    groups: dict[int, list[tuple[int, ...]]] = {}
    for i, m in enumerate(all_maps):
        groups.setdefault(find(i), []).append(m)
    classes = []
    for members in groups.values():
        rep = SelfMap(image, min(members))
        fix_counts = Spectrum.of(sum(1 for i, t in enumerate(m) if i == t)
                                 for m in members)
        classes.append(HomotopyClass(rep, fix_counts, len(members), True,
                                     frozenset(members)))
    classes.sort(key=lambda c: c.representative.targets)
    if stats is not None:
        stats.maps_enumerated += len(all_maps)
        stats.nodes_visited += nodes_total
        stats.elapsed += time.perf_counter() - t0
    return classes
