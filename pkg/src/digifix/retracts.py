"""Retractions and deformation retractions, searched by pinned backtracking."""

from __future__ import annotations

from dataclasses import dataclass

from .homotopy import homotopic
from .image import DigitalImage, induced_subimage
from .search import SearchContext, enumerate_maps
from .selfmap import SelfMap


@dataclass(frozen=True)
class RetractionWitness:
    """A continuous self-map fixing `subset` pointwise with image inside it."""

    subset: frozenset[int]
    map: SelfMap


def find_retraction(image: DigitalImage, subset):
    """Search a retraction of the image onto `subset`.

    Vertices of the subset are pinned to themselves; the rest are assigned
    in index order with continuity pruning, candidates ascending, so the
    witness returned is the lexicographically least one.  None if there is
    no retraction.
    """
    keep = frozenset(subset)
    if not keep:
        raise ValueError("subset must be nonempty")
    for v in keep:
        if not 0 <= v < image.n:
            raise ValueError(f"vertex {v} out of range")
    n = image.n
    a_mask = 0
    for v in keep:
        a_mask |= 1 << v
    base = [1 << v if v in keep else a_mask for v in range(n)]
    # Index-order context keeps the first solution lexicographically least.
    order = list(range(n))
    prior = [tuple(u for u in image.neighbors(v) if u < v) for v in order]
    ctx = SearchContext(n, [image.nstar_mask(i) for i in range(n)], order, prior)
    found = []

    def visit(f):
        found.append(tuple(f))
        return True

    enumerate_maps(ctx, base, visit)
    if not found:
        return None
    return RetractionWitness(keep, SelfMap(image, found[0]))


def is_deformation_retraction(witness: RetractionWitness, budget: int = 10**6):
    """Is the retraction, composed with inclusion, homotopic to the identity?

    True/False when decided; None when the class search ran out of budget.
    """
    image = witness.map.image
    identity = SelfMap(image, tuple(range(image.n)))
    return homotopic(identity, witness.map, budget=budget)


def retract_subimage(witness: RetractionWitness):
    """The retract as an image of its own, with the ambient adjacency."""
    return induced_subimage(witness.map.image, witness.subset)
