"""Named image families and the figure presets used throughout the package."""

from __future__ import annotations

import itertools

from .image import CuAdjacency, DigitalImage, build_image, explicit


def interval(a: int, b: int) -> DigitalImage:
    """The digital interval [a,b] in Z with c_1 adjacency."""
    if a > b:
        raise ValueError(f"invalid interval [{a},{b}]")
    return build_image([(x,) for x in range(a, b + 1)], CuAdjacency(1),
                       name=f"interval({a},{b})")


def cycle(n: int) -> DigitalImage:
    """The digital n-cycle: x_i adjacent only to x_(i-1) and x_(i+1) mod n."""
    if n < 1:
        raise ValueError("cycle needs n >= 1")
    edges = set()
    for i in range(n):
        j = (i + 1) % n
        if i != j:
            edges.add((min(i, j), max(i, j)))
    return build_image(n, explicit(edges), name=f"C_{n}")


def box(a: int, b: int, u: int) -> DigitalImage:
    """The box [1,a] x [1,b] in Z^2 with c_u adjacency, u in {1,2}."""
    if a < 1 or b < 1:
        raise ValueError("box needs a,b >= 1")
    if u not in (1, 2):
        raise ValueError("box adjacency u must be 1 or 2")
    pts = [(x, y) for x in range(1, a + 1) for y in range(1, b + 1)]
    return build_image(pts, CuAdjacency(u), name=f"box({a},{b},{u})")


def cube() -> DigitalImage:
    """The unit cube: 8 points of {0,1}^3 with c_1 adjacency."""
    pts = sorted(itertools.product((0, 1), repeat=3))
    return build_image(pts, CuAdjacency(1), name="cube")


def wedge_cycles_8() -> DigitalImage:
    """Two 8-adjacency 6-cycles in Z^2 sharing the point (0,0).

    11 points with c_2 adjacency; the shared point has index 0.
    """
    pts = [(0, 0), (1, -1), (2, -1), (3, 0), (2, 1), (1, 1),
           (-1, -1), (-2, -1), (-3, 0), (-2, 1), (-1, 1)]
    return build_image(pts, CuAdjacency(2), name="wedge_cycles_8")


def fig_xexample() -> DigitalImage:
    """18-point 4-adjacency image: [0,6]x{0,2} plus four middle rungs."""
    pts = sorted({(x, y) for x in range(7) for y in (0, 2)}
                 | {(0, 1), (2, 1), (4, 1), (6, 1)})
    return build_image(pts, CuAdjacency(1), name="fig_xexample")


def fig_sexample() -> DigitalImage:
    """15-point 4-adjacency image: [0,5]x{0,2} plus three middle rungs."""
    pts = sorted({(x, y) for x in range(6) for y in (0, 2)}
                 | {(0, 1), (2, 1), (5, 1)})
    return build_image(pts, CuAdjacency(1), name="fig_sexample")


FAMILIES = {
    "interval": (interval, 2),
    "cycle": (cycle, 1),
    "box": (box, 3),
    "cube": (cube, 0),
    "wedge_cycles_8": (wedge_cycles_8, 0),
    "fig_xexample": (fig_xexample, 0),
    "fig_sexample": (fig_sexample, 0),
}


def generate(family: str, *params: int) -> DigitalImage:
    """Build a named image family with integer parameters."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; known: {sorted(FAMILIES)}")
    fn, arity = FAMILIES[family]
    if len(params) != arity:
        raise ValueError(f"family {family!r} takes {arity} parameter(s)")
    return fn(*params)
