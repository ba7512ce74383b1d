"""Fixed point spectra, pull indices, and spectrum combinators.

The spectrum search is exact: every count in the result is backed by a
witness map, and every count not in the result was refuted by an exhausted
branch-and-bound search.  Work is partitioned per candidate count, so the
result and the reported statistics do not depend on the thread count.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import BudgetExceededError, FixedPointPropertyError
from .image import DigitalImage, is_connected
from .search import (build_context, context_for, default_node_budget,
                     discover_fix_counts, exists_fix_count, enumerate_maps,
                     min_moved)
from .selfmap import SelfMap, fixed_point_free_map


@dataclass(frozen=True)
class Spectrum:
    """A sorted set of non-negative integers, e.g. F(X) or S(f)."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(sorted(set(int(v) for v in self.values)))
        if vals and vals[0] < 0:
            raise ValueError("spectrum values must be non-negative")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, values) -> "Spectrum":
        return cls(tuple(values))

    def as_set(self) -> frozenset[int]:
        return frozenset(self.values)

    def oplus(self, other: "Spectrum") -> "Spectrum":
        return combine_spectra(self, other, "oplus")

    def otimes(self, other: "Spectrum") -> "Spectrum":
        return combine_spectra(self, other, "otimes")

    def __iter__(self):
        return iter(self.values)

    def __contains__(self, k):
        return k in self.values

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return "{" + ",".join(map(str, self.values)) + "}"


def combine_spectra(a: Spectrum, b: Spectrum, op: str) -> Spectrum:
    """Elementwise sum-set (oplus) or product-set (otimes) of two spectra."""
    if op == "oplus":
        return Spectrum.of(x + y for x in a for y in b)
    if op == "otimes":
        return Spectrum.of(x * y for x in a for y in b)
    raise ValueError(f"unknown spectrum operation {op!r}")


@dataclass
class EnumerationStats:
    maps_enumerated: int = 0
    nodes_visited: int = 0
    elapsed: float = 0.0
    truncated: bool = False

    def merged_with(self, other: "EnumerationStats") -> "EnumerationStats":
        return EnumerationStats(
            self.maps_enumerated + other.maps_enumerated,
            self.nodes_visited + other.nodes_visited,
            self.elapsed + other.elapsed,
            self.truncated or other.truncated,
        )


def enumerate_continuous_selfmaps(image: DigitalImage, visitor, limit=None,
                                  node_budget=None) -> EnumerationStats:
    """Visit every continuous self-map exactly once, in a fixed order.

    The visitor receives each complete map as a SelfMap and may return
    truthy to stop early.  `limit` caps the number of maps visited; hitting
    it sets the truncated flag instead of raising.
    """
    t0 = time.perf_counter()
    ctx = context_for(image)
    base = [ctx.full_mask] * image.n if image.n else []

    def visit(f):
        return visitor(SelfMap(image, tuple(f)))

    maps_count, nodes, truncated = enumerate_maps(
        ctx, base, visit, limit=limit,
        node_limit=node_budget if node_budget is not None else default_node_budget())
    return EnumerationStats(maps_count, max(nodes, maps_count),
                            time.perf_counter() - t0, truncated)


def count_continuous_selfmaps(image: DigitalImage, limit=None) -> int:
    """Number of continuous self-maps (the size of C(X))."""
    stats = enumerate_continuous_selfmaps(image, lambda f: None, limit=limit)
    return stats.maps_enumerated


def _witness_seeds(image: DigitalImage):
    """Fixed-point counts with directly constructed, verified witnesses.

    Identity, a constant, the standard fixed-point-free map, and the
    closed-neighborhood truncation maps (fix the first k members of N*(x),
    send the rest to x).  Every candidate is checked for continuity before
    being admitted, so the seeding is sound independent of any theorem.
    Returns (seeds dict, nodes charged for the verification work).
    """
    n = image.n
    if n == 0:
        return {0: ()}, 1
    seeds: dict[int, tuple[int, ...]] = {}
    nodes = 0

    def admit(targets):
        nonlocal nodes
        nodes += n
        m = SelfMap(image, targets)
        if m.is_continuous():
            seeds.setdefault(m.fix_count(), m.targets)

    admit(tuple(range(n)))
    admit((0,) * n)
    try:
        admit(fixed_point_free_map(image).targets)
    except FixedPointPropertyError:
        pass
    for x in range(n):
        members = [x] + list(image.neighbors(x))
        for k in range(1, len(members) + 1):
            kept = set(members[:k])
            admit(tuple(i if i in kept else x for i in range(n)))
    return seeds, nodes


def _spectrum_search(image: DigitalImage, node_budget=None, threads: int = 1,
                     discovery_cap: int = 200_000):
    """Exact F(X) with statistics.  Returns (sorted counts, stats)."""
    t0 = time.perf_counter()
    budget = node_budget if node_budget is not None else default_node_budget()
    n = image.n
    seeds, seed_nodes = _witness_seeds(image)
    found = set(seeds)
    nodes_total = seed_nodes
    maps_total = len(found)
    undecided = [k for k in range(n + 1) if k not in found]
    if undecided:
        ctx = context_for(image)
        mask = 0
        for k in found:
            mask |= 1 << k
        mask, nodes, maps_count = discover_fix_counts(
            ctx, mask, min(discovery_cap, budget))
        nodes_total += nodes
        maps_total += maps_count
        found = {k for k in range(n + 1) if (mask >> k) & 1}
        undecided = [k for k in range(n + 1) if k not in found]
    if undecided:
        ctx = context_for(image)

        def search(k):
            return exists_fix_count(ctx, k, node_limit=budget)

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(search, undecided))
        else:
            results = [search(k) for k in undecided]
        for k, (witness, nodes) in zip(undecided, results):
            nodes_total += nodes
            if witness is not None:
                maps_total += 1
                found.add(k)
    if nodes_total > budget:
        raise BudgetExceededError("spectrum search exceeded its node budget",
                                  nodes=nodes_total)
    stats = EnumerationStats(maps_total, nodes_total,
                             time.perf_counter() - t0, False)
    return sorted(found), stats


def fixed_point_spectrum(image: DigitalImage, node_budget=None,
                         threads: int = 1) -> Spectrum:
    """F(X): the set of fixed-point counts over all continuous self-maps."""
    values, _ = _spectrum_search(image, node_budget=node_budget, threads=threads)
    return Spectrum.of(values)


def pull_index(image: DigitalImage, x: int, node_budget=None) -> int:
    """P(x): the fewest points any continuous map moving x must move."""
    if not 0 <= x < image.n:
        raise ValueError(f"vertex {x} out of range")
    if image.n <= 1:
        raise ValueError("pull index is undefined on a single point")
    ctx = build_context(image, root=x)
    budget = node_budget if node_budget is not None else default_node_budget()
    best, _witness, _nodes = min_moved(ctx, x, node_limit=budget)
    if best is None:
        raise ValueError(f"no continuous map moves vertex {x}")
    return best


def nminus1_criterion(image: DigitalImage):
    """Witness pair (x1, x2) with N(x1) contained in N*(x2), else None.

    For a connected image this decides whether #X - 1 is in F(X)."""
    if image.n <= 1:
        raise ValueError("criterion needs at least 2 vertices")
    if not is_connected(image):
        raise ValueError("criterion is defined for connected images")
    for x1 in range(image.n):
        open_mask = image.open_mask(x1)
        for x2 in range(image.n):
            if x1 == x2:
                continue
            if open_mask & ~image.nstar_mask(x2) == 0:
                return (x1, x2)
    return None
