"""Canonical, versioned file formats for images and self-maps."""

from __future__ import annotations

import json

from .errors import ImageFormatError
from .image import (CuAdjacency, DigitalImage, ExplicitAdjacency,
                    ProductAdjacency, build_image, explicit, product)
from .selfmap import SelfMap

IMAGE_FORMAT = "digifix-image/1"
MAP_FORMAT = "digifix-map/1"


def image_to_dict(image: DigitalImage) -> dict:
    out = {"format": IMAGE_FORMAT, "name": image.name,
           "dimension": image.dimension}
    if image.points is not None:
        out["points"] = [list(p) for p in image.points]
    else:
        out["size"] = image.n
    spec = image.spec
    if isinstance(spec, CuAdjacency):
        out["adjacency"] = {"kind": "cu", "u": spec.u}
    elif isinstance(spec, ProductAdjacency):
        out["adjacency"] = {"kind": "npu", "u": spec.u,
                            "factors": [image_to_dict(f) for f in spec.factors]}
    else:
        edges = sorted(image.edge_list())
        out["adjacency"] = {"kind": "explicit",
                            "edges": [[i, j] for i, j in edges]}
    return out


def _require(cond, msg):
    if not cond:
        raise ImageFormatError(msg)


def image_from_dict(data, where="image") -> DigitalImage:
    _require(isinstance(data, dict), f"{where}: expected an object")
    _require(data.get("format") == IMAGE_FORMAT,
             f"{where}: format must be {IMAGE_FORMAT!r}, got {data.get('format')!r}")
    name = data.get("name", "image")
    _require(isinstance(name, str), f"{where}.name: expected a string")
    adjacency = data.get("adjacency")
    _require(isinstance(adjacency, dict), f"{where}.adjacency: expected an object")
    kind = adjacency.get("kind")
    points = data.get("points")
    if points is not None:
        _require(isinstance(points, list)
                 and all(isinstance(p, list) and all(isinstance(c, int) for c in p)
                         for p in points),
                 f"{where}.points: expected a list of integer coordinate lists")
        points = [tuple(p) for p in points]
    try:
        if kind == "cu":
            u = adjacency.get("u")
            _require(isinstance(u, int), f"{where}.adjacency.u: expected an integer")
            _require(points is not None, f"{where}: cu adjacency requires points")
            img = build_image(points, CuAdjacency(u), name=name)
        elif kind == "explicit":
            edges = adjacency.get("edges")
            _require(isinstance(edges, list)
                     and all(isinstance(e, list) and len(e) == 2
                             and all(isinstance(v, int) for v in e) for e in edges),
                     f"{where}.adjacency.edges: expected a list of index pairs")
            size = points if points is not None else _explicit_size(data, where)
            img = build_image(size, explicit(tuple(e) for e in edges), name=name)
        elif kind == "npu":
            u = adjacency.get("u")
            _require(isinstance(u, int), f"{where}.adjacency.u: expected an integer")
            factors = adjacency.get("factors")
            _require(isinstance(factors, list) and factors,
                     f"{where}.adjacency.factors: expected a nonempty list")
            imgs = [image_from_dict(f, where=f"{where}.factors[{i}]")
                    for i, f in enumerate(factors)]
            img = product(imgs, u, name=name)
            if points is not None:
                _require(img.points is not None and list(img.points) == points,
                         f"{where}.points: disagree with the computed product points")
        else:
            raise ImageFormatError(f"{where}.adjacency.kind: unknown kind {kind!r}")
    except ValueError as exc:
        raise ImageFormatError(f"{where}: {exc}") from exc
    dim = data.get("dimension")
    _require(isinstance(dim, int), f"{where}.dimension: expected an integer")
    _require(dim == img.dimension,
             f"{where}.dimension: {dim} does not match points ({img.dimension})")
    return img


def _explicit_size(data, where):
    size = data.get("size")
    _require(isinstance(size, int) and size >= 0,
             f"{where}: explicit adjacency without points needs a 'size' field")
    return size


def save_image(image: DigitalImage, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(image_to_dict(image), fh, sort_keys=True, indent=1)
        fh.write("\n")


def load_image(path) -> DigitalImage:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ImageFormatError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc
    except OSError as exc:
        raise ImageFormatError(f"{path}: {exc}") from exc
    return image_from_dict(data, where=str(path))


def map_to_dict(m: SelfMap) -> dict:
    return {"format": MAP_FORMAT, "targets": list(m.targets)}


def map_from_dict(data, image: DigitalImage, where="map") -> SelfMap:
    _require(isinstance(data, dict), f"{where}: expected an object")
    _require(data.get("format") == MAP_FORMAT,
             f"{where}: format must be {MAP_FORMAT!r}, got {data.get('format')!r}")
    targets = data.get("targets")
    _require(isinstance(targets, list) and all(isinstance(t, int) for t in targets),
             f"{where}.targets: expected a list of integers")
    try:
        return SelfMap(image, tuple(targets))
    except ValueError as exc:
        raise ImageFormatError(f"{where}: {exc}") from exc


def save_map(m: SelfMap, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(map_to_dict(m), fh, sort_keys=True, indent=1)
        fh.write("\n")


def load_map(path, image: DigitalImage) -> SelfMap:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ImageFormatError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc
    except OSError as exc:
        raise ImageFormatError(f"{path}: {exc}") from exc
    return map_from_dict(data, image, where=str(path))
