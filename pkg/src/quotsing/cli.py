"""Command-line front end.

Every command builds one flat record (or a stream of them for ``sweep``);
``--format text`` prints ``key: value`` lines, ``--format json`` prints one
JSON object per line. Both carry the same fields.

Exit status: 0 ok, 1 sweep mismatches, 2 invalid input, 3 group too large,
4 internal consistency failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .abelian import AbelianGroup, is_R2_abelian, is_R2_abelian_bruteforce
from .catalog import (
    FAMILIES,
    FamilySpec,
    SweepConfig,
    expected_center,
    expected_order,
    expected_pgl,
    family_generators,
    render_table,
    summarize,
    sweep,
    table_prediction,
)
from .cyclic import CyclicType, is_type_R
from .errors import ConsistencyError, GroupTooLarge, ValidationError
from .exact import conductor_limit
from .hjcf import hj_expand, is_critical_pair, is_critical_pair_arith, resolution_string
from .invariant import analyze_group
from .matgrp import DEFAULT_MAX_ORDER, FiniteMatrixGroup, generate, load_generators, pgl_image_type, scalar_subgroup

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_TOO_LARGE, EXIT_INCONSISTENT = 0, 1, 2, 3, 4


# -- text rendering -------------------------------------------------------------


def format_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(format_value(x) for x in v) + ")"
    return str(v)


def parse_value(s: str):
    """Inverse of :func:`format_value` for the values records contain."""
    if s in ("null", "true", "false"):
        return {"null": None, "true": True, "false": False}[s]
    if s.startswith("(") and s.endswith(")"):
        inner = s[1:-1]
        return [parse_value(x) for x in inner.split(",")] if inner else []
    try:
        return int(s)
    except ValueError:
        return s


def render_text(record: dict) -> str:
    return "\n".join(f"{k}: {format_value(v)}" for k, v in record.items())


def parse_text(text: str) -> dict:
    out = {}
    for line in text.strip().splitlines():
        k, _, v = line.partition(": ")
        out[k] = parse_value(v)
    return out


def emit(record: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(record) + "\n")
    else:
        out.write(render_text(record) + "\n")


# -- commands ----------------------------------------------------------------------


def cmd_hj(args) -> tuple[int, list[dict]]:
    e = hj_expand(args.n, args.d)
    return EXIT_OK, [{"n": args.n, "d": args.d, "expansion": list(e), "resolution": list(resolution_string(e))}]


def cmd_critical(args) -> tuple[int, list[dict]]:
    shape = is_critical_pair(args.n, args.d)
    arith = is_critical_pair_arith(args.n, args.d)
    if shape != arith:
        raise ConsistencyError(f"criteria disagree on ({args.n}, {args.d}): shape={shape}, arithmetic={arith}")
    e = hj_expand(args.n, args.d)
    return EXIT_OK, [{"n": args.n, "d": args.d, "expansion": list(e), "shape": shape, "arithmetic": arith, "critical": shape}]


def cmd_is_r(args) -> tuple[int, list[dict]]:
    if not 1 <= args.d <= args.n:
        raise ValidationError(f"need 1 <= d <= n, got n={args.n}, d={args.d}")
    t = CyclicType(args.n, args.d)
    r = is_type_R(t, args.char)
    verdict = "type R" if r else "not of type R"
    return EXIT_OK, [{"n": args.n, "d": args.d, "type": str(t), "char": args.char, "typeR": r, "verdict": verdict}]


def _group_record(g: FiniteMatrixGroup) -> dict:
    a = analyze_group(g)
    return {
        "order": g.order,
        "conductor": g.conductor,
        "center": scalar_subgroup(g),
        "pgl_image": str(pgl_image_type(g)),
        "p_order": a.p_order,
        "quotient_order": a.quotient.order,
        "quotient_cyclic": a.quotient.is_cyclic,
        "degrees": list(a.degrees) if a.degrees else None,
        "weights": [a.weights.a, a.weights.e1, a.weights.e2] if a.weights else None,
        "singularity": str(a.result),
        "typeR": a.result.type_r,
    }


def cmd_group(args) -> tuple[int, list[dict]]:
    conductor, gens = load_generators(args.file)
    g = generate(gens, max_order=args.max_order, conductor=conductor)
    return EXIT_OK, [_group_record(g)]


def cmd_family(args) -> tuple[int, list[dict]]:
    spec = FamilySpec(args.name, args.q, args.m or 0)
    conductor, gens = family_generators(spec, args.phi)
    g = generate(gens, max_order=args.max_order, conductor=conductor)
    rec = {"family": spec.family, "q": spec.q, "m": spec.m}
    rec.update(_group_record(g))
    pred = table_prediction(spec)
    rec.update(
        predicted_negR=pred,
        match=rec["typeR"] == (not pred),
        expected_order=expected_order(spec),
        expected_center=expected_center(spec),
        expected_pgl_image=str(expected_pgl(spec)),
    )
    return EXIT_OK, [rec]


def cmd_sweep(args) -> tuple[int, list[dict]]:
    cfg = SweepConfig(
        max_q=args.max_q,
        max_m=args.max_m,
        max_order=args.max_order,
        jobs=args.jobs,
        families=tuple(args.family or FAMILIES),
        conductor_cap=args.conductor_cap or SweepConfig.conductor_cap,
    )

    def stream(r):
        if args.format == "json":
            emit(r.record(), "json")
        else:
            sys.stdout.write(" ".join(f"{k}={format_value(v)}" for k, v in r.record().items()) + "\n")
        sys.stdout.flush()

    reports = sweep(cfg, on_report=stream)
    s = summarize(reports)
    summary = {
        "summary": True,
        "total": s.total,
        "matched": s.matched,
        "mismatched": s.mismatched,
        "skipped": s.skipped,
        "column_failures": s.column_failures,
    }
    if args.format == "text":
        sys.stdout.write("\n" + render_table(reports) + "\n\n")
    code = EXIT_OK if s.ok else EXIT_MISMATCH
    return code, [summary]


def cmd_abelian(args) -> tuple[int, list[dict]]:
    g = AbelianGroup.from_orders(args.factors)
    formula = is_R2_abelian(g)
    rec = {"factors": list(args.factors), "invariant_factors": list(g.invariant_factors), "order": g.order,
           "rank": g.rank, "R2": formula, "bruteforce": None}
    if g.order <= args.brute_limit:
        brute = is_R2_abelian_bruteforce(g)
        if brute != formula:
            raise ConsistencyError(f"formula ({formula}) and brute force ({brute}) disagree on {g}")
        rec["bruteforce"] = brute
    return EXIT_OK, [rec]


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--conductor-cap", type=int, default=None, help="largest cyclotomic conductor allowed")

    p = argparse.ArgumentParser(prog="quotsing", description="Decide type R for tame quotient surface singularities.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hj", parents=[common], help="Hirzebruch-Jung expansion of n/d")
    s.add_argument("n", type=int)
    s.add_argument("d", type=int)
    s.set_defaults(func=cmd_hj)

    s = sub.add_parser("critical", parents=[common], help="critical-pair test, both criteria")
    s.add_argument("n", type=int)
    s.add_argument("d", type=int)
    s.set_defaults(func=cmd_critical)

    s = sub.add_parser("is-r", parents=[common], help="type R decision for 1/n(1,d)")
    s.add_argument("n", type=int)
    s.add_argument("d", type=int)
    s.add_argument("--char", type=int, default=0)
    s.set_defaults(func=cmd_is_r)

    s = sub.add_parser("group", parents=[common], help="analyse a matrix group read from a JSON file")
    s.add_argument("--file", required=True)
    s.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("family", parents=[common], help="analyse one member of a family")
    s.add_argument("--name", required=True, choices=FAMILIES)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--m", type=int, default=None)
    s.add_argument("--phi", type=int, default=1, help="exponent choosing the coset generator of a mixed group")
    s.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("sweep", parents=[common], help="verify the classification table over a range")
    s.add_argument("--max-q", type=int, default=4)
    s.add_argument("--max-m", type=int, default=2)
    s.add_argument("--max-order", type=int, default=2000)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--family", action="append", choices=FAMILIES)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("abelian", parents=[common], help="type R_2 for a product of cyclic groups")
    s.add_argument("factors", type=int, nargs="*")
    s.add_argument("--brute-limit", type=int, default=240, help="run the brute force up to this order")
    s.set_defaults(func=cmd_abelian)
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.conductor_cap and args.command != "sweep":
            with conductor_limit(args.conductor_cap):
                code, records = args.func(args)
        else:
            code, records = args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except GroupTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    for rec in records:
        emit(rec, args.format)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
