"""Command-line front end.  JSON on stdout, logs on stderr."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import catalog, degrees
from .batch import CapExceeded
from .closures import ch_closure, ch_equivalent, h_closure, h_equivalent
from .cosets import ConsistencyError, StandardFamily
from .invariants import genus, label_invariants
from .subgroups import (
    DEFAULT_CAP,
    SubgroupSpec,
    contains_minus_identity,
    gl_level,
    index,
    is_full_det,
    order,
    sl_level,
)
from .zmod import NonInvertible

log = logging.getLogger("gl2orbits")

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_INTERNAL = 0, 2, 3, 4

THEOREMS = {
    "1.1": (degrees.CurveKind.X0, "infinite"),
    "1.2": (degrees.CurveKind.X1, "infinite"),
    "1.3": (degrees.CurveKind.X0, "all"),
    "1.4": (degrees.CurveKind.X1, "all"),
}


class InputError(Exception):
    pass


def _family(name: str, n: int) -> StandardFamily:
    name = name.lower()
    if name in ("b0", "x0"):
        return StandardFamily.b0(n)
    if name in ("b1", "x1"):
        return StandardFamily.b1(n)
    raise InputError(f"unknown family {name!r}")


def _load(path) -> SubgroupSpec:
    return catalog.load_subgroup(path)


def _capped(args, key: str, fn, out: dict) -> None:
    try:
        out[key] = fn()
    except CapExceeded as exc:
        if args.strict:
            raise
        log.warning("%s skipped: %s", key, exc)
        out[key] = "skipped: cap"


def cmd_info(args) -> dict:
    G = _load(args.file)
    out: dict = {"modulus": G.modulus}
    _capped(args, "order", lambda: order(G, args.cap), out)
    _capped(args, "index", lambda: index(G, args.cap), out)
    _capped(args, "gl_level", lambda: gl_level(G, args.cap), out)
    _capped(args, "sl_level", lambda: sl_level(G, args.cap), out)
    out["det_full"] = is_full_det(G)
    _capped(args, "contains_minus_I", lambda: contains_minus_identity(G, args.cap), out)
    _capped(args, "genus", lambda: genus(G, args.cap).genus, out)
    return out


def _closure_summary(result) -> dict:
    N, i, g = label_invariants(result.closure)
    return {
        "family": result.orbit_partition.table.subgroup.name,
        "kind": result.kind.value,
        "order": result.order,
        "level": N,
        "index": i,
        "genus": g,
        "generators": [m.to_list() for m in result.closure.generators],
        "orbits": ",".join(map(str, result.orbit_partition.block_sizes)),
    }


def cmd_closure(args) -> dict:
    G = _load(args.file)
    fn = ch_closure if args.kind == "ch" else h_closure
    return _closure_summary(fn(_family(args.family, args.n), G))


def _fiber_input(args) -> SubgroupSpec:
    if args.file:
        return _load(args.file)
    log.info("no --file: using the trivial subgroup mod %d", args.n)
    return SubgroupSpec.trivial(args.n)


def cmd_fibers(args) -> dict:
    G = _fiber_input(args)
    ms = degrees.fiber_degrees(args.curve, args.n, G, args.j)
    res = ch_closure(degrees.family(args.curve, args.n), G)
    N, i, g = label_invariants(res.closure)
    return {"curve": ms.curve.value, "n": ms.n, "degrees": str(ms), "closure": [N, i, g]}


def cmd_points(args) -> dict:
    G = _fiber_input(args)
    pts = degrees.point_degrees(args.curve, args.n, G, args.j)
    return {"curve": degrees.CurveKind.parse(args.curve).value, "n": args.n, "degrees": sorted(pts)}


def cmd_equivalent(args) -> dict:
    H = _family(args.family, args.n)
    A, B = _load(args.file), _load(args.other)
    fn = ch_equivalent if args.kind == "ch" else h_equivalent
    return {"family": H.name, "kind": args.kind, "equivalent": fn(H, A, B)}


def cmd_genus(args) -> dict:
    G = _load(args.file)
    d = genus(G, args.cap)
    return {"genus": d.genus, "index": d.sl_index, "e2": d.e2, "e3": d.e3,
            "cusps": d.cusps, "sl_level": d.sl_level}


def cmd_theorem(args) -> dict:
    curve, regime = THEOREMS[args.which]
    if args.n < 1:
        raise InputError("--n must be positive")
    full = (degrees.infinite_degree_set if regime == "infinite" else degrees.all_degree_set)(curve, args.n)
    own = degrees.level_component(curve, args.n, regime)
    out = {"which": args.which, "curve": curve.value, "n": args.n,
           "values": list(full.values), "level_component": list(own.values),
           "conditional": full.conditional}
    if full.conditional:
        out["note"] = degrees.CONDITIONAL_NOTE
    return out


def cmd_catalog_validate(args) -> dict:
    rep = catalog.ingest_catalog(args.dir, cap=args.cap)
    return {"entries": [e.label for e in rep.entries], "errors": rep.errors}


def cmd_pipeline(args) -> dict:
    rep = catalog.ingest_catalog(args.dir, cap=args.cap)
    res = catalog.pipeline_filter(rep.entries, args.cap)
    return {"outcomes": [o.to_json() for o in res.outcomes], "errors": rep.errors,
            "note": "rational-point conditions are read from flags, never computed"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap")
    common.add_argument("--strict", action="store_true", help="fail when a cap is hit")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="gl2orbits", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("info", cmd_info, "invariants of a subgroup file")
    sp.add_argument("--file", required=True)

    sp = add("closure", cmd_closure, "H- or CH-closure for B0(n) or B1(n)")
    sp.add_argument("--family", default="b0")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--file", required=True)
    sp.add_argument("--kind", choices=("ch", "h"), default="ch")

    for name, fn in (("fibers", cmd_fibers), ("points", cmd_points)):
        sp = add(name, fn, f"{name} above j on X0(n) or X1(n)")
        sp.add_argument("--curve", choices=("x0", "x1", "X0", "X1"), required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--file")
        sp.add_argument("--j", help="optional j-invariant, checked against the CM list")

    sp = add("equivalent", cmd_equivalent, "compare two subgroups")
    sp.add_argument("--family", default="b0")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--file", required=True)
    sp.add_argument("--other", required=True)
    sp.add_argument("--kind", choices=("ch", "h"), default="ch")

    sp = add("genus", cmd_genus, "genus of X_G")
    sp.add_argument("--file", required=True)

    sp = add("theorem", cmd_theorem, "degree sets on X0(n), X1(n)")
    sp.add_argument("--which", choices=sorted(THEOREMS), required=True)
    sp.add_argument("--n", type=int, required=True)

    for name, fn in (("catalog-validate", cmd_catalog_validate), ("pipeline", cmd_pipeline)):
        sp = add(name, fn, f"{name} over an ingest directory")
        sp.add_argument("--dir", required=True)
    return p


def _pretty(out: dict) -> str:
    width = max(len(k) for k in out) if out else 0
    return "\n".join(f"{k:<{width}}  {v}" for k, v in out.items())


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(stream=sys.stderr, level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        out = args.func(args)
    except CapExceeded as exc:
        log.error("%s", exc)
        return EXIT_CAP
    except ConsistencyError as exc:
        log.error("internal consistency failure: %s", exc)
        return EXIT_INTERNAL
    except (InputError, catalog.ParseError, NonInvertible, degrees.CMInput, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    sys.stdout.write((_pretty(out) if args.pretty else json.dumps(out, sort_keys=True)) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
