"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or
parse error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import List, Optional

import numpy as np

from . import depth as D
from . import io as dio
from . import lab
from . import models as M
from . import regions as R
from .errors import AHDError, ParseError
from .verify import MUTATIONS, format_report, verify_suite

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def _fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ahdepth", description="Exact angular halfspace depth on spheres.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, data=True):
        if data:
            sp.add_argument("data", help="dataset CSV (d columns, optional trailing weight)")
            sp.add_argument("--normalize", action="store_true", help="rescale non-unit rows instead of failing")
        sp.add_argument("-o", "--output", help="output path (default: stdout)")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("depth", help="exact depth of query points")
    common(sp)
    sp.add_argument("queries", help="query CSV (d columns)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--method", choices=("auto", "oracle", "projected", "table"), default="auto")

    sp = sub.add_parser("region", help="central region at level alpha")
    common(sp)
    sp.add_argument("--alpha", type=_fraction, required=True)
    sp.add_argument("--resolution", type=int, default=5)

    sp = sub.add_parser("median", help="angular median set")
    common(sp)
    sp.add_argument("--resolution", type=int, default=5)

    sp = sub.add_parser("approx", help="random-direction upper bound of the depth")
    common(sp)
    sp.add_argument("queries")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("simulate", help="run a consistency experiment from a JSON spec")
    common(sp, data=False)
    sp.add_argument("spec", help="experiment JSON")
    sp.add_argument("--experiment", choices=sorted(lab.RUNNERS), default="uniform")
    sp.add_argument("--format", choices=("csv", "json"), default="json")
    sp.add_argument("--timing", action="store_true", help="include wall time in JSON metadata")

    sp = sub.add_parser("verify", help="run the verification battery")
    common(sp, data=False)
    sp.add_argument("--mutate", choices=MUTATIONS, help="deliberately break the engine (self-test)")

    sp = sub.add_parser("generate", help="sample a dataset from a model JSON")
    common(sp, data=False)
    sp.add_argument("model", help="model JSON")
    sp.add_argument("--n", type=int, required=True)
    return p


def _write(text: str, path: Optional[str]):
    if path is None:
        sys.stdout.write(text)
    else:
        dio._emit(text, path)


def _run(args) -> int:
    meta = {"command": args.command, "seed": args.seed}
    if args.command == "verify":
        status, results = verify_suite(args.seed, args.mutate)
        report = format_report(results) + "\n"
        _write(f"# seed={args.seed} mutate={args.mutate}\n" + report, args.output)
        return EXIT_VERIFY if status else EXIT_OK
    if args.command == "simulate":
        spec = lab.ExperimentSpec.from_dict(dio.read_json(args.spec))
        if "seed" not in dio.read_json(args.spec):
            spec.seed = args.seed
        table = lab.RUNNERS[args.experiment](spec)
        table.metadata["seed"] = spec.seed
        text = table.to_json(timing=args.timing) + "\n" if args.format == "json" else table.to_csv()
        _write(text, args.output)
        return EXIT_OK
    if args.command == "generate":
        if args.n < 1:
            raise ValueError("--n must be positive")
        model = M.from_dict(dio.read_json(args.model))
        data = M.sample(model, args.n, args.seed)
        _write(f"# seed={args.seed} n={args.n}\n" + dio.write_dataset(data), args.output)
        return EXIT_OK

    data = dio.read_dataset(args.data, normalize=args.normalize)
    if args.command in ("depth", "approx"):
        Q = dio.read_queries(args.queries, dim=data.dim, normalize=args.normalize)
        if args.command == "depth":
            if args.method == "oracle":
                vals = [D.ahd_oracle(q, data).value for q in Q]
            elif args.method == "projected":
                vals = [D.ahd_projected(q, data, args.seed).value for q in Q]
            elif args.method == "table":
                vals = D.depth_many(data, Q)
            else:
                vals = R.depth_profile(data, Q, args.seed)
        else:
            if args.m < 1:
                raise ValueError("--m must be positive")
            meta["m"] = args.m
            vals = [D.ahd_approx(q, data, args.m, args.seed) for q in Q]
        _write(dio.write_depths(Q, vals, fmt=args.format, meta=meta), args.output)
        return EXIT_OK
    if args.command == "region":
        reg = R.central_region(data, args.alpha, args.resolution, args.seed)
        _write(dio.region_to_json(reg, meta), args.output)
        return EXIT_OK
    med = R.median_set(data, args.resolution, args.seed)
    meta["approximate"] = med.approximate
    _write(dio.region_to_json(med.region, meta, max_depth=med.max_depth), args.output)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _run(args)
    except (ParseError, dio.IoError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (AHDError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
