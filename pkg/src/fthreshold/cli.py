"""Command line front end.

    fthreshold fpt --field p=5 --poly "x*(x+y)^2"
    fthreshold ft --field p=5 --ell x,y,x+y,x+2*y --a 7,10,13,16 --ideal x,y^2
    fthreshold grid --field p=2 --ell x,y,x+y --q 16 --box 0:1,0:1,0:1 --format pgm

Exit status: 0 on success, 2 for bad input or an undefined quantity,
3 when a resource cap is hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from . import __version__
from .arith import format_rational
from .errors import DomainError, FThresholdError, ResourceError
from .formats import cells_to_csv, cells_to_json, grid_image, parse_box, pgm_bytes, staircase_image
from .fpt import FptConfig, fpt_homogeneous, fpt_quasi_homogeneous, ft_general, nu_oracle
from .fractal import (
    DEFAULT_CELL_CAP,
    LinearSystem,
    _box_ranges,
    boundary_digit_predicate,
    critical_points_in_box,
    grid_sweep,
    staircase_sweep,
)
from .parse import parse_factored, parse_field, parse_form, parse_forms_list, parse_quasi_homogeneous
from .poly import factor_product
from .syzygy import TwoGenIdeal

log = logging.getLogger("fthreshold")


def _int_list(text: str, what: str):
    try:
        out = [int(x) for x in text.split(",")]
    except ValueError:
        raise DomainError("%s must be a comma separated list of integers, got %r" % (what, text)) from None
    return out


def _cell_cap(args) -> int:
    if args.cell_cap is not None:
        return args.cell_cap
    raw = os.environ.get("FTHRESHOLD_CELL_CAP")
    return int(raw) if raw else DEFAULT_CELL_CAP


def _config(args) -> FptConfig:
    cfg = FptConfig(seed=args.seed, debug_oracle=getattr(args, "debug_oracle", False))
    if getattr(args, "e_max", None) is not None:
        cfg.e_max = args.e_max
    return cfg


def _ideal(text: str, field) -> TwoGenIdeal:
    gens = parse_forms_list(text, field)
    if len(gens) != 2:
        raise DomainError("the ideal needs exactly two generators, got %d" % len(gens))
    return TwoGenIdeal(*gens)


def _system_and_ideal(args, default_ell=None):
    field = parse_field(args.field)
    ell = args.ell or default_ell
    if not ell:
        raise DomainError("--ell is required")
    system = LinearSystem.from_forms(parse_forms_list(ell, field))
    ideal = _ideal(args.ideal, field)
    return system, ideal


def _emit(args, payload):
    if isinstance(payload, (dict, list)):
        data = (json.dumps(payload, indent=2) + "\n").encode()
    elif isinstance(payload, str):
        data = payload.encode()
    else:
        data = payload
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


# subcommands


def cmd_fpt(args):
    field = parse_field(args.field)
    cfg = _config(args)
    if args.weights:
        u, v = _int_list(args.weights, "--weights")
        g = parse_quasi_homogeneous(args.poly, field, (u, v))
        res = fpt_quasi_homogeneous(g, (u, v), cfg)
    else:
        res = fpt_homogeneous(parse_factored(args.poly, field), cfg)
    _emit(args, res.to_json(diagnostics=args.diagnostics))


def cmd_ft(args):
    field = parse_field(args.field)
    cfg = _config(args)
    ideal = _ideal(args.ideal, field)
    if args.poly:
        fac = factor_product(parse_factored(args.poly, field), seed=args.seed)
        system, a = LinearSystem(fac.forms), fac.multiplicities
        ideal = ideal.embed(fac.field)
    else:
        if not (args.ell and args.a):
            raise DomainError("give --poly, or both --ell and --a")
        system = LinearSystem.from_forms(parse_forms_list(args.ell, field))
        a = _int_list(args.a, "--a")
    res = ft_general(system, a, ideal, cfg)
    _emit(args, res.to_json(diagnostics=args.diagnostics))


def cmd_factor(args):
    field = parse_field(args.field)
    fac = factor_product(parse_factored(args.poly, field), seed=args.seed)
    _emit(args, fac.to_json())


def cmd_critical(args):
    system, ideal = _system_and_ideal(args)
    box = parse_box(args.box)
    pts = critical_points_in_box(system, ideal, box, args.q, cell_cap=_cell_cap(args))
    if args.format == "csv":
        n = system.n
        lines = [",".join(["a%d" % (i + 1) for i in range(n)] + ["q", "delta_num", "delta_den"])]
        for cp in pts:
            d = cp.delta_value
            lines.append(",".join(str(x) for x in list(cp.point.a) + [cp.point.q, d.numerator, d.denominator]))
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, {"critical_points": [cp.to_json() for cp in pts]})


def cmd_grid(args):
    system, ideal = _system_and_ideal(args)
    box = parse_box(args.box)
    with_delta = args.format != "pgm" or args.render == "delta"
    cells = grid_sweep(system, ideal, box, args.q, cell_cap=_cell_cap(args), with_delta=with_delta)
    if args.format == "csv":
        _emit(args, cells_to_csv(cells, system.n))
    elif args.format == "pgm":
        ranges = _box_ranges(box, args.q)
        _emit(args, pgm_bytes(grid_image(cells, ranges, args.render), args.pgm_variant))
    else:
        _emit(args, {"q": args.q, "cells": cells_to_json(cells)})


def cmd_staircase(args):
    system, ideal = _system_and_ideal(args, default_ell="x,y,x+y")
    box = parse_box(args.box) if args.box else None
    cells = staircase_sweep(system, ideal, args.q, box, cell_cap=_cell_cap(args))
    check = None
    if args.check_digits:
        if not ideal.is_maximal():
            raise DomainError("the digit predicate describes the boundary for <x, y> only")
        check = sum(
            1
            for c in cells
            if boundary_digit_predicate([Fraction(x, c.q) for x in c.a], system.field.p) != (c.region == "B")
        )
    if args.format == "csv":
        _emit(args, cells_to_csv(cells, system.n))
    elif args.format == "pgm":
        if system.n != 3:
            raise DomainError("staircase images need three linear forms")
        ranges = _box_ranges(box or [(0, ideal.deg_uv)] * 3, args.q)
        _emit(args, pgm_bytes(staircase_image(cells, ranges), args.pgm_variant))
    else:
        out = {"q": args.q, "cells": cells_to_json(cells)}
        if check is not None:
            out["digit_predicate_mismatches"] = check
        _emit(args, out)
    if check:
        raise DomainError("%d cells disagree with the digit predicate" % check)


def cmd_oracle(args):
    field = parse_field(args.field)
    G = parse_form(args.poly, field)
    ideal = _ideal(args.ideal, field)
    rows = []
    for e in range(1, args.e + 1):
        nu = nu_oracle(G, ideal, e, cap=args.nu_cap)
        q = field.p**e
        rows.append({"e": e, "q": q, "nu": nu, "nu_over_q": format_rational(Fraction(nu, q))})
    _emit(args, {"rows": rows})


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fthreshold", description="F-thresholds of binary forms and the syzygy gap fractal.")
    ap.add_argument("--version", action="version", version="%(prog)s " + __version__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, poly=False, ell=False, out_formats=("json",)):
        p.add_argument("--field", required=True, help="p=5 or p=5;deg=3;mod=a^3+a+1")
        p.add_argument("--seed", type=int, default=FptConfig().seed)
        p.add_argument("--output", "-o")
        p.add_argument("--format", choices=out_formats, default=out_formats[0])
        if ell:
            p.add_argument("--ell", help="comma separated linear forms")
            p.add_argument("--ideal", default="x,y", help="two generators, e.g. x,y^2")
            p.add_argument("--cell-cap", type=int)

    p = sub.add_parser("fpt", help="F-pure threshold of a form or quasi-homogeneous polynomial")
    common(p)
    p.add_argument("--poly", required=True)
    p.add_argument("--weights", help="u,v for quasi-homogeneous input")
    p.add_argument("--e-max", type=int)
    p.add_argument("--debug-oracle", action="store_true")
    p.add_argument("--diagnostics", action="store_true")
    p.set_defaults(func=cmd_fpt)

    p = sub.add_parser("ft", help="F-threshold with respect to a two-generator ideal")
    common(p)
    p.add_argument("--poly")
    p.add_argument("--ell")
    p.add_argument("--a", help="exponent vector")
    p.add_argument("--ideal", default="x,y")
    p.add_argument("--e-max", type=int)
    p.add_argument("--diagnostics", action="store_true")
    p.set_defaults(func=cmd_ft)

    p = sub.add_parser("factor", help="factor a form into linear forms")
    common(p)
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("critical", help="critical points a/q in a box")
    common(p, ell=True, out_formats=("json", "csv"))
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--box", required=True)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("grid", help="Delta and regions on a grid")
    common(p, ell=True, out_formats=("json", "csv", "pgm"))
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--box", required=True)
    p.add_argument("--render", choices=("region", "delta"), default="region")
    p.add_argument("--pgm-variant", choices=("P2", "P5"), default="P5")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("staircase", help="boundary cells on the slice |t| = deg UV")
    common(p, ell=True, out_formats=("json", "csv", "pgm"))
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--box")
    p.add_argument("--pgm-variant", choices=("P2", "P5"), default="P5")
    p.add_argument("--check-digits", action="store_true", help="compare with the base-p digit description")
    p.set_defaults(func=cmd_staircase)

    p = sub.add_parser("oracle", help="brute force nu(p^e) table")
    common(p)
    p.add_argument("--poly", required=True)
    p.add_argument("--ideal", default="x,y")
    p.add_argument("--e", type=int, default=2)
    p.add_argument("--nu-cap", type=int, default=20_000)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except ResourceError as exc:
        print("fthreshold: resource limit: %s" % exc, file=sys.stderr)
        return 3
    except DomainError as exc:
        print("fthreshold: error: %s" % exc, file=sys.stderr)
        return 2
    except FThresholdError as exc:
        print("fthreshold: internal error: %s" % exc, file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
