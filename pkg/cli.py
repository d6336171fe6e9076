#!/usr/bin/env python3
"""
Command-line front end for the orbifold projective line toolkit.

Usage
-----
python cli.py classify --A 2,3,6
python cli.py normal-form --A 2,3,7 --vec "5*x3 - c"
python cli.py k0-class --A 2,3,7 --obj "O(1*c+1*x1)"
python cli.py charge --A 2,3,7 --tau 0,1 --obj "O(1*c)"
python cli.py homdim --A 2,2,2,2 "S[1,0]" "S[1,1;3]" --ext
python cli.py check-thm1 --A 2,3,7 --charges charges.json
python cli.py gldim --A 2,3,5 --tau 0,1 --json
python cli.py scan --A 2,3,7 --grid "re=0:im=1,10,100" --out scan.csv --threads 4
python cli.py verify-theorems --A 2,2,2,2

Exit codes: 0 success, 1 failed verification, 2 usage error, 3 internal error.
Results go to stdout; logs go to stderr.
"""
import argparse
import sys

import config
import gldim
import k0
import lattice
import stability
from exactnum import GaussRat, parse_gauss
from homdim import HomQuery
from stability import StabilityParam
from utils import dump_json, format_rational, logger, save_checkpoint, validate_dataframe

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def weight_spec_arg(text: str) -> lattice.WeightSpec:
    try:
        return lattice.parse_weights(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def tau_arg(text: str) -> GaussRat:
    try:
        tau = parse_gauss(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))
    if not tau.im > 0:
        raise argparse.ArgumentTypeError(f"tau = {tau} is not in the upper half-plane")
    return tau


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"Expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cli.py",
                                 description="Exact stability computations on orbifold projective lines")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--A", dest="spec", type=weight_spec_arg, required=True,
                       help="Weight tuple, e.g. 2,3,7")
        p.add_argument("--json", action="store_true", help="Machine-readable output")
        return p

    add("classify", "Euler characteristic and weight type")

    p = add("normal-form", "Normal form of a lattice vector")
    p.add_argument("--vec", required=True, help="e.g. '5*x3 - c'")

    p = add("k0-class", "K_0 class of an object literal")
    p.add_argument("--obj", required=True, help="O(<vec>), S[*], S[*;n], S[i,j] or S[i,j;n]")

    p = add("charge", "Central charge, phase and verdict of an object")
    p.add_argument("--tau", type=tau_arg, default=GaussRat(*config.DEFAULT_TAU))
    p.add_argument("--obj", required=True)

    p = add("homdim", "dim Hom (or Ext^1 with --ext) between two objects")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--ext", action="store_true")

    p = add("check-thm1", "Check whether a charge table comes from some sigma_tau")
    p.add_argument("--charges", required=True, help="JSON file: label -> [re, im]")

    for name, help_text in (("gldim", "Phase-gap supremum over the catalog"),
                            ("scan", "gldim over a grid of tau values"),
                            ("verify-theorems", "End-to-end checks for one weight type")):
        p = add(name, help_text)
        if name != "scan":
            p.add_argument("--tau", type=tau_arg, default=GaussRat(*config.DEFAULT_TAU))
        p.add_argument("--L", type=positive_int, default=config.DEFAULT_WINDOW_L,
                       help="Line bundles with |l| <= L")
        p.add_argument("--N", type=positive_int, default=config.DEFAULT_WINDOW_N,
                       help="Torsion lengths <= N (default 2*max(a_i))")
        if name == "scan":
            p.add_argument("--grid", required=True,
                           help="File, 're=v1,v2:im=w1,w2' or 're,im;re,im'")
            p.add_argument("--out", default=None, help="CSV path (stdout if omitted)")
            p.add_argument("--threads", type=positive_int, default=config.THREADS)
    return ap


def parse_args(argv=None) -> argparse.Namespace:
    """Parse and resolve literals against the weight spec; bad literals exit 2."""
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "normal-form":
            args.vec = lattice.parse_lvec(args.spec, args.vec)
        elif args.command in ("k0-class", "charge"):
            args.obj = k0.parse_object(args.spec, args.obj)
        elif args.command == "homdim":
            args.source = k0.parse_object(args.spec, args.source)
            args.target = k0.parse_object(args.spec, args.target)
        elif args.command == "scan":
            args.grid = gldim.parse_grid(args.grid)
        elif args.command == "check-thm1":
            args.charges = stability.load_charges(args.spec, args.charges)
        if getattr(args, "N", None) is not None and args.N < max(args.spec.weights):
            ap.error(f"--N must be at least max(a_i) = {max(args.spec.weights)}")
    except (ValueError, OSError) as e:
        ap.error(str(e))
    return args


# --- handlers: each returns (exit code, JSON payload, human text) ------------

def _classify(args):
    spec = args.spec
    omega = lattice.omega(spec)
    payload = {
        "A": lattice.format_weights(spec),
        "chi": lattice.euler_char(spec),
        "type": lattice.classify(spec).value,
        "a": spec.a,
        "omega": lattice.format_lvec(omega),
        "deg_omega": lattice.deg(spec, omega),
        "fractional_cy": lattice.fractional_cy(spec),
        "k0_rank": k0.k0_rank(spec.weights),
    }
    text = (f"A = ({payload['A']}): chi = {format_rational(payload['chi'])}, "
            f"{payload['type']}, deg(omega) = {payload['deg_omega']}")
    return EXIT_OK, payload, text


def _normal_form(args):
    x = args.vec
    payload = {"normal_form": lattice.format_lvec(x), "l": x.l, "parts": list(x.parts),
               "deg": lattice.deg(args.spec, x), "effective": lattice.is_effective(x)}
    return EXIT_OK, payload, payload["normal_form"]


def _k0_class(args):
    cls = k0.class_of(args.obj)
    coords = {lattice.format_lvec(v): c for v, c in k0.tilting_coordinates(cls).items() if c}
    payload = {"object": k0.format_object(args.obj), "class": cls, "rank": k0.rank(cls),
               "degree": k0.degree(cls), "tilting_coordinates": coords}
    text = " + ".join(f"{c}[{lbl}]" for lbl, c in cls.to_json().items() if c) or "0"
    return EXIT_OK, payload, f"[{payload['object']}] = {text}"


def _charge(args):
    sigma = StabilityParam(args.tau)
    obj = args.obj
    z = stability.charge_of(sigma, obj)
    ph = stability.phase(sigma, obj)
    verdict = stability.is_semistable(sigma, obj, lattice.euler_char(args.spec))
    rk, d = k0.rank_degree(obj)
    payload = {"object": k0.format_object(obj), "tau": args.tau, "charge": z, "phase": ph,
               "mass_squared": z.norm2(), "rank": rk, "degree": d, "verdict": verdict}
    text = (f"Z({payload['object']}) = {z}, phase = {ph} ({float(ph):.6f}), "
            f"{verdict.status}")
    return EXIT_OK, payload, text


def _homdim(args):
    query = HomQuery(args.source, args.target, 1 if args.ext else 0)
    dim = query.dim()
    name = "Ext^1" if args.ext else "Hom"
    payload = {"source": k0.format_object(args.source), "target": k0.format_object(args.target),
               "ext_degree": query.ext_degree, "dim": dim if dim is not None else "Unknown"}
    return EXIT_OK, payload, f"dim {name}({payload['source']}, {payload['target']}) = {payload['dim']}"


def _check_thm1(args):
    result = stability.theorem1_check(args.charges, args.spec)
    code = EXIT_OK if result.accepted else EXIT_VERIFICATION_FAILED
    text = f"Accept(tau = {result.tau})" if result.accepted else \
        f"Reject({result.reason.value}): {result.detail}"
    return code, result, text


def _gldim(args):
    sigma = StabilityParam(args.tau)
    catalog = gldim.catalog_build(args.spec, sigma, args.L, args.N)
    logger.info(f"Catalog: {len(catalog)} semistable objects (L={catalog.window[0]}, N={catalog.window[1]})")
    report = gldim.max_gap(catalog)
    kind = "Ext^1" if report.ext else "Hom"
    relation = "=" if report.exactness == gldim.Exactness.EXACT_GLOBAL else ">="
    text = (f"gldim sigma_tau {relation} {report.to_json()['value']} ({report.float_value:.6f}) "
            f"[{report.exactness.value}] witness {kind}({k0.format_object(report.witness_a)}, "
            f"{k0.format_object(report.witness_b)})")
    return EXIT_OK, report, text


def _scan(args):
    table = gldim.scan(args.spec, args.grid, args.L, args.N, args.threads)
    validate_dataframe(table, gldim.SCAN_COLUMNS)
    if args.out:
        save_checkpoint(table, args.out, "(tau scan)")
        return EXIT_OK, {"out": args.out, "rows": len(table)}, f"Wrote {len(table)} rows to {args.out}"
    return EXIT_OK, table.to_dict(orient="records"), table.to_csv(index=False, float_format="%.15g").rstrip("\n")


def _verify(args):
    report = gldim.verify_theorems(args.spec, StabilityParam(args.tau), args.L, args.N)
    code = EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED
    # the report is JSON either way; CI reads the failure list
    return code, report, dump_json(report)


HANDLERS = {
    "classify": _classify,
    "normal-form": _normal_form,
    "k0-class": _k0_class,
    "charge": _charge,
    "homdim": _homdim,
    "check-thm1": _check_thm1,
    "gldim": _gldim,
    "scan": _scan,
    "verify-theorems": _verify,
}


def run(args: argparse.Namespace, out=None) -> int:
    out = out or sys.stdout
    code, payload, text = HANDLERS[args.command](args)
    print(dump_json(payload) if args.json else text, file=out)
    return code


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        return run(args)
    except Exception:
        logger.exception(f"Internal error in '{args.command}'")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
