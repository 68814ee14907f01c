"""Command line entry point: ``conecert <subcommand> ...``.

Exit codes: 0 when every check passes, 1 on a validation failure,
2 on parse or usage errors.  Reports are JSON on stdout.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import critical7, lawlor
from .catalog import SpecError, factor_props, parse_factor
from .certify import certify, load_specs
from .product import compose
from .suite import GROUPS, run_suite, table_rows

__all__ = ["main", "certify", "run_suite", "table_rows"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return str(obj)


def _emit(payload, out=None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, default=_default)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    print(text)


def cmd_certify(args) -> int:
    specs = load_specs(args.spec)
    cert = certify(specs, seed=args.seed)
    cert.product = args.spec
    _emit(cert.to_dict(), args.json)
    return EXIT_OK if all(v["pass"] for v in cert.validations) else EXIT_FAIL


def cmd_table(args) -> int:
    if args.kmin < 3 or args.kmax < args.kmin:
        raise SpecError("need 3 <= kmin <= kmax")
    rows = table_rows(args.kmin, args.kmax)
    if args.csv:
        writer = csv.DictWriter(sys.stdout, fieldnames=["dimC", "alphaSq", "theta1Deg", "theta2Deg"])
        writer.writeheader()
        writer.writerows(rows)
    else:
        _emit({"rows": rows})
    return EXIT_OK


def cmd_critical7(args) -> int:
    if args.all:
        matrix = []
        for case in critical7.case_catalog():
            v = critical7.validate_claim(case)
            v.pop("reports")
            b = critical7.boundary_threshold_check(case)
            matrix.append({"case": case.name, "claim": v, "threshold": b,
                           "pass": v["pass"] and b["pass"]})
        _emit({"cases": matrix, "pass": all(m["pass"] for m in matrix)})
        return EXIT_OK if all(m["pass"] for m in matrix) else EXIT_FAIL
    if args.case is None:
        raise SpecError("give --all or --case")
    try:
        case = critical7.get_case(args.case)
    except KeyError as exc:
        raise SpecError(str(exc.args[0])) from None
    if args.t is None:
        try:
            _emit(critical7.certify_dim7(case))
        except critical7.ValidationError as exc:
            _emit({"case": case.name, "error": str(exc)})
            return EXIT_FAIL
        return EXIT_OK
    try:
        rep = critical7.minimize_jacobian(case, args.t, t_max=args.t_max)
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    _emit(rep.to_dict())
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .matrixlab import oracles
    from .matrixlab.embedding import random_normals, shape_operator, sup_alpha_sq

    if args.check == "plucker":
        dev = oracles.plucker_orbit_check(args.n, trials=args.trials, seed=args.seed)
        ok = dev < 1e-12
        _emit({"check": "plucker", "n": args.n, "trials": args.trials, "maxDeviation": dev, "pass": ok})
        return EXIT_OK if ok else EXIT_FAIL
    if args.check == "detfloor":
        alpha = math.sqrt(args.alpha_sq)
        floor = oracles.sym_det_floor(args.m, alpha, args.t, trials=args.trials, seed=args.seed)
        bound = lawlor.two_eigen_L(alpha, args.t, args.m, 1)
        ok = floor >= bound - 1e-9
        _emit({"check": "detfloor", "m": args.m, "alphaSq": args.alpha_sq, "t": args.t,
               "empiricalMin": floor, "L": bound, "pass": ok})
        return EXIT_OK if ok else EXIT_FAIL

    if args.factor is None:
        raise SpecError(f"--check {args.check} needs --factor")
    spec = parse_factor(args.factor)
    emb = oracles.cached_embedding(spec)
    props = factor_props(spec)
    if args.check == "alpha":
        res = sup_alpha_sq(emb, samples=max(args.trials, 1000), seed=args.seed)
        ok = abs(res["sup"] - float(props.alpha_sq)) <= 1e-6
        report = {"supAlphaSq": res["sup"], "exact": res["exact"], "sampled": res["sampled"],
                  "catalogAlphaSq": str(props.alpha_sq)}
    elif args.check == "trace":
        rng = np.random.default_rng(args.seed)
        worst = max((abs(float(np.trace(shape_operator(emb, v))))
                     for v in random_normals(emb, args.trials, rng)), default=0.0)
        ok = worst <= 1e-10
        report = {"maxAbsTrace": worst, "normals": args.trials}
    else:
        cos = oracles.normal_radius_witness([spec], 0)
        want = compose([spec]).candidate_cosines[0]
        ok = abs(cos - float(want)) <= 1e-12
        report = {"witnessCosine": cos, "catalogCosine": str(want), "radiusSq": str(props.radius_sq),
                  "normalRadiusDeg": round(math.degrees(math.acos(float(want))), 4)}
    _emit({"check": args.check, "factor": str(spec), **report, "pass": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_suite(args) -> int:
    status, report = run_suite(args.which)
    _emit(report, args.json)
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conecert", description="Curvature-criterion certificates for product cones.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("certify", help="certify one product")
    c.add_argument("spec", help="product such as 'G(1,3;R) x S(2)', or a JSON file with a factors array")
    c.add_argument("--json", metavar="OUT", help="also write the certificate to OUT")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_certify)

    t = sub.add_parser("table", help="vanishing angles at alpha^2 = k - 1")
    t.add_argument("--kmin", type=int, default=8)
    t.add_argument("--kmax", type=int, default=12)
    t.add_argument("--csv", action="store_true")
    t.set_defaults(func=cmd_table)

    k = sub.add_parser("critical7", help="seven-dimensional critical cases")
    g = k.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true")
    g.add_argument("--case", help="case name (e.g. RP2xRP2xRP2) or 1-based index")
    k.add_argument("--t", type=float)
    k.add_argument("--t-max", type=float, default=critical7.T_CAP)
    k.set_defaults(func=cmd_critical7)

    o = sub.add_parser("oracle", help="brute-force checks on explicit embeddings")
    o.add_argument("--factor")
    o.add_argument("--check", required=True, choices=["alpha", "trace", "radius", "plucker", "detfloor"])
    o.add_argument("--trials", type=int, default=100)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--n", type=int, default=2, help="plucker: rotations of size 2n+1")
    o.add_argument("--m", type=int, default=6, help="detfloor: matrix size")
    o.add_argument("--alpha-sq", type=float, default=6.0, help="detfloor: squared norm")
    o.add_argument("--t", type=float, default=0.2, help="detfloor: slope")
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("suite", help="run reproduction suites")
    s.add_argument("which", choices=GROUPS)
    s.add_argument("--json", metavar="OUT")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (SpecError, json.JSONDecodeError) as exc:
        print(f"conecert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
