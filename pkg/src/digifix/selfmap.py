"""Self-maps of a digital image and the named maps used in the test corpus."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FixedPointPropertyError
from .generators import cycle
from .image import DigitalImage


@dataclass(frozen=True)
class SelfMap:
    """A total function on the vertices of one image, as a target array."""

    image: DigitalImage
    targets: tuple[int, ...]

    def __post_init__(self):
        targets = tuple(int(t) for t in self.targets)
        object.__setattr__(self, "targets", targets)
        n = self.image.n
        if len(targets) != n:
            raise ValueError(f"expected {n} targets, got {len(targets)}")
        for i, t in enumerate(targets):
            if not 0 <= t < n:
                raise ValueError(f"target {t} of vertex {i} out of range")

    def __call__(self, i: int) -> int:
        return self.targets[i]

    def is_continuous(self) -> bool:
        """Adjacent vertices must map to adjacent-or-equal vertices."""
        adj = self.image.adj
        t = self.targets
        for i in range(self.image.n):
            ti = t[i]
            row = adj[i]
            while row:
                b = row & -row
                row ^= b
                j = b.bit_length() - 1
                if j < i:
                    continue
                tj = t[j]
                if ti != tj and not (adj[ti] >> tj) & 1:
                    return False
        return True

    def fix_set(self) -> frozenset[int]:
        return frozenset(i for i, t in enumerate(self.targets) if i == t)

    def moved_set(self) -> frozenset[int]:
        return frozenset(i for i, t in enumerate(self.targets) if i != t)

    def fix_count(self) -> int:
        return sum(1 for i, t in enumerate(self.targets) if i == t)

    def after(self, other: "SelfMap") -> "SelfMap":
        """self o other, both maps on the same image."""
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(i == t for i, t in enumerate(self.targets))

    def __repr__(self):
        return f"SelfMap({self.image.name}, {list(self.targets)})"


def same_space(f: SelfMap, g: SelfMap) -> bool:
    """Maps live on the same image (structurally: same adjacency rows)."""
    return f.image is g.image or f.image.adj == g.image.adj


def compose(g: SelfMap, f: SelfMap) -> SelfMap:
    """g o f.  Composition of continuous maps stays continuous."""
    if not same_space(g, f):
        raise ValueError("maps are on different images")
    gt, ft = g.targets, f.targets
    return SelfMap(f.image, tuple(gt[ft[i]] for i in range(f.image.n)))


def identity_map(image: DigitalImage) -> SelfMap:
    return SelfMap(image, tuple(range(image.n)))


def constant_map(image: DigitalImage, j: int = 0) -> SelfMap:
    return SelfMap(image, (j,) * image.n)


def fixed_point_free_map(image: DigitalImage) -> SelfMap:
    """The standard continuous map with no fixed points.

    Picks the lexicographically least adjacent pair (x0, x1) and sends x0 to
    x1 and everything else to x0.  Fails iff the image has no edge, in which
    case every continuous self-map fixes the lone reachable configuration.
    """
    pair = None
    for i in range(image.n):
        row = image.adj[i] >> (i + 1)
        if row:
            pair = (i, i + 1 + (row & -row).bit_length() - 1)
            break
    if pair is None:
        raise FixedPointPropertyError(
            f"{image.name} has no adjacent pair; it has the fixed point property")
    x0, x1 = pair
    targets = [x0] * image.n
    targets[x0] = x1
    return SelfMap(image, tuple(targets))


def cycle_map(n: int, kind: str, param: int = 0, image: DigitalImage | None = None) -> SelfMap:
    """Named self-maps of the digital cycle C_n.

    kind 'constant': x_i -> x_param; 'rotation': x_i -> x_(i+param);
    'flip': x_i -> x_(param-i), i.e. the rotation r_param composed with
    the flip l.  Indices mod n.
    """
    if n < 1:
        raise ValueError("cycle needs n >= 1")
    if not 0 <= param < n:
        raise ValueError(f"parameter {param} out of range for C_{n}")
    if image is None:
        image = cycle(n)
    elif image.n != n:
        raise ValueError("image size does not match n")
    if kind == "constant":
        targets = (param,) * n
    elif kind == "rotation":
        targets = tuple((i + param) % n for i in range(n))
    elif kind in ("flip", "flip_composed"):
        targets = tuple((param - i) % n for i in range(n))
    else:
        raise ValueError(f"unknown cycle map kind {kind!r}")
    return SelfMap(image, targets)


def point_transform_map(image: DigitalImage, transform) -> SelfMap:
    """Build a self-map from a coordinate transformation.

    `transform` takes and returns a coordinate tuple; every transformed
    point must again be a vertex of the image.
    """
    if image.points is None:
        raise ValueError("image has no coordinates")
    index = {p: i for i, p in enumerate(image.points)}
    targets = []
    for p in image.points:
        q = tuple(transform(p))
        if q not in index:
            raise ValueError(f"transform sends {p} to {q}, not a vertex")
        targets.append(index[q])
    return SelfMap(image, tuple(targets))


def _bounding_box(image: DigitalImage):
    if image.points is None or image.dimension != 2:
        raise ValueError("needs a 2-dimensional coordinate image")
    xs = [p[0] for p in image.points]
    ys = [p[1] for p in image.points]
    return min(xs), max(xs), min(ys), max(ys)


def rotation_180(image: DigitalImage) -> SelfMap:
    """180-degree rotation about the bounding-box center of a planar image."""
    x0, x1, y0, y1 = _bounding_box(image)
    return point_transform_map(image, lambda p: (x0 + x1 - p[0], y0 + y1 - p[1]))


def vertical_reflection(image: DigitalImage) -> SelfMap:
    """Mirror a planar image top-to-bottom (y -> ymin + ymax - y)."""
    _, _, y0, y1 = _bounding_box(image)
    return point_transform_map(image, lambda p: (p[0], y0 + y1 - p[1]))


def box_fold_map(image: DigitalImage, t: int) -> SelfMap:
    """The family f_t on a box [x0,x0+a-1] x [y0,y0+b-1].

    Moves the lowest t points of the left column one step diagonally
    (x,y) -> (x+1,y+1) and fixes everything else, leaving a*b - t fixed
    points.  Requires 0 <= t <= b-1, and a >= 2 unless t == 0.
    """
    x0, x1, y0, y1 = _bounding_box(image)
    a, b = x1 - x0 + 1, y1 - y0 + 1
    if len(image.points) != a * b:
        raise ValueError("image is not a full box")
    if not 0 <= t <= b - 1:
        raise ValueError(f"t={t} out of range for b={b}")
    if t > 0 and a < 2:
        raise ValueError("diagonal fold needs a >= 2")

    def fold(p):
        x, y = p
        if x == x0 and y - y0 + 1 <= t:
            return (x + 1, y + 1)
        return (x, y)

    return point_transform_map(image, fold)
