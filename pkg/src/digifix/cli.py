"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 resource budget
exceeded.  All commands are deterministic; `--threads` changes the worker
count but never the output bytes.
"""

from __future__ import annotations

import argparse
import sys

from . import io as dio
from .errors import BudgetExceededError, DigifixError, ImageFormatError
from .generators import FAMILIES, generate
from .geometry import fix_structure
from .homotopy import homotopy_class, homotopy_classes, is_rigid_image
from .image import DigitalImage
from .lasso import lasso_rigidity_certificate
from .reports import Report, digest_file, render
from .retracts import find_retraction
from .spectrum import (EnumerationStats, _spectrum_search, nminus1_criterion,
                       pull_index)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="digifix", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_map=False):
        p.add_argument("image", help="image file")
        if with_map:
            p.add_argument("--map", required=True, dest="mapfile",
                           help="self-map file")
        p.add_argument("--format", choices=("json", "csv", "text"),
                       default="json")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--budget", type=int, default=None,
                       help="node budget override (env DIGIFIX_BUDGET)")

    p = sub.add_parser("gen", help="write a named image family to a file")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")

    common(sub.add_parser("spectrum", help="fixed point spectrum F(X)"))
    common(sub.add_parser("sfix", help="homotopy fixed point spectrum S(f)"),
           with_map=True)
    common(sub.add_parser("rigid", help="is the image rigid?"))
    p = sub.add_parser("pull", help="pull indices P(x)")
    common(p)
    p.add_argument("--point", type=int, default=None)
    common(sub.add_parser("classes", help="homotopy class census"))
    common(sub.add_parser("fixset", help="structure of Fix(f)"), with_map=True)
    common(sub.add_parser("lasso", help="lasso rigidity certificate"))
    p = sub.add_parser("retract", help="search a retraction onto a subset")
    common(p)
    p.add_argument("--subset", required=True,
                   help="comma-separated vertex indices")
    common(sub.add_parser("criterion", help="(n-1)-membership witness pair"))
    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--criterion", dest="only", default=None,
                   help="run a single criterion by id")
    return parser


def _load(path) -> DigitalImage:
    return dio.load_image(path)


def _spectrum_cmd(args):
    image = _load(args.image)
    values, stats = _spectrum_search(image, node_budget=args.budget,
                                     threads=args.threads)
    return {"image": image.name, "vertices": image.n,
            "spectrum": values}, stats


def _sfix_cmd(args):
    image = _load(args.image)
    m = dio.load_map(args.mapfile, image)
    if not m.is_continuous():
        raise ImageFormatError(f"{args.mapfile}: map is not continuous")
    stats = EnumerationStats()
    cls = homotopy_class(m, stats=stats)
    return {"image": image.name, "spectrum": list(cls.fix_counts.values),
            "min_fixed": cls.min_fixed, "max_fixed": cls.max_fixed,
            "class_size": cls.size, "complete": cls.complete}, stats


def _rigid_cmd(args):
    image = _load(args.image)
    return {"image": image.name, "vertices": image.n,
            "rigid": is_rigid_image(image)}, None


def _pull_cmd(args):
    image = _load(args.image)
    if args.point is not None:
        value = pull_index(image, args.point, node_budget=args.budget)
        return {"image": image.name, "point": args.point,
                "pull_index": value}, None
    values = [pull_index(image, x, node_budget=args.budget)
              for x in range(image.n)]
    return {"image": image.name, "pull_indices": values}, None


def _classes_cmd(args):
    image = _load(args.image)
    stats = EnumerationStats()
    classes = homotopy_classes(image, stats=stats)
    return {"image": image.name, "count": len(classes),
            "classes": [{"representative": list(c.representative.targets),
                         "size": c.size,
                         "fix_counts": list(c.fix_counts.values)}
                        for c in classes]}, stats


def _fixset_cmd(args):
    image = _load(args.image)
    m = dio.load_map(args.mapfile, image)
    if not m.is_continuous():
        raise ImageFormatError(f"{args.mapfile}: map is not continuous")
    st = fix_structure(m)
    return {"image": image.name, "kind": st.kind, "fixed": list(st.fixed),
            "components": [list(c) for c in st.components],
            "cycle_antipodal": st.cycle_antipodal}, None


def _lasso_cmd(args):
    image = _load(args.image)
    cert = lasso_rigidity_certificate(image, threads=args.threads)
    lassos = {f"{x}-{y}": {"path": list(l.path), "loop": list(l.loop)}
              for (x, y), l in sorted(cert.lassos.items())}
    return {"image": image.name, "certified": cert.certified,
            "lassos": lassos,
            "missing": [list(p) for p in cert.missing]}, None


def _retract_cmd(args):
    image = _load(args.image)
    try:
        subset = sorted({int(tok) for tok in args.subset.split(",") if tok})
    except ValueError as exc:
        raise ImageFormatError(f"--subset: {exc}") from exc
    witness = find_retraction(image, subset)
    return {"image": image.name, "subset": subset,
            "found": witness is not None,
            "targets": list(witness.map.targets) if witness else None}, None


def _criterion_cmd(args):
    image = _load(args.image)
    witness = nminus1_criterion(image)
    return {"image": image.name,
            "witness": list(witness) if witness else None}, None


_COMMANDS = {
    "spectrum": _spectrum_cmd,
    "sfix": _sfix_cmd,
    "rigid": _rigid_cmd,
    "pull": _pull_cmd,
    "classes": _classes_cmd,
    "fixset": _fixset_cmd,
    "lasso": _lasso_cmd,
    "retract": _retract_cmd,
    "criterion": _criterion_cmd,
}


def _gen_cmd(args, out):
    fn, arity = FAMILIES[args.family]
    if len(args.params) != arity:
        raise _UsageError(f"family {args.family!r} takes {arity} parameter(s)")
    try:
        image = generate(args.family, *args.params)
    except ValueError as exc:
        raise ImageFormatError(str(exc)) from exc
    dio.save_image(image, args.output)
    report = Report("gen", digest_file(args.output),
                    {"family": args.family, "name": image.name,
                     "vertices": image.n, "edges": image.num_edges(),
                     "output": args.output}, None)
    out.write(render(report, args.format))
    return 0


def _verify_cmd(args, out):
    from .acceptance import run_all
    results = run_all(only=args.only)
    width = max(len(r.cid) for r in results)
    for r in results:
        mark = "PASS" if r.ok else "FAIL"
        out.write(f"[{mark}] {r.cid:<{width}}  {r.title} ({r.seconds:.2f}s)\n".encode())
        if not r.ok:
            out.write(f"       {r.detail}\n".encode())
    good = sum(1 for r in results if r.ok)
    out.write(f"{good}/{len(results)} criteria passed\n".encode())
    return 0 if good == len(results) else 1


def run_command(argv, stdout=None) -> int:
    """Parse argv, run, write the report; returns the exit code."""
    out = stdout if stdout is not None else sys.stdout.buffer
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "gen":
            return _gen_cmd(args, out)
        if args.command == "verify":
            return _verify_cmd(args, out)
        handler = _COMMANDS[args.command]
        result, stats = handler(args)
        report = Report(args.command, digest_file(args.image), result, stats)
        out.write(render(report, args.format))
        return 0
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 1
    except (ImageFormatError, ValueError) as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return 2
    except BudgetExceededError as exc:
        sys.stderr.write(f"resource budget exceeded: {exc}\n")
        return 3
    except DigifixError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
