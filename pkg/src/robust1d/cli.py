"""Command-line front end.

Subcommands:

* ``mean``        robust mean of a sample file (one value per line, or
                  value and weight with ``--weighted``), with an optional
                  brute-force cross-check.
* ``smooth``      edge-preserving smoothing of a PGM image.
* ``experiment``  emit one of the comparison/benchmark tables as CSV.

Exit codes: 0 success, 2 unparseable input data, 3 invalid flags or
validation failure, 4 oracle mismatch.  Results go to stdout, diagnostics
to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import estimator, experiments, pgm
from .channels import OutOfRangeError
from .estimator import brute_force_robust_mean, exact_robust_mean, make_sample_set
from .experiments import GridSweepConfig, OutlierSweepConfig, format_number
from .pgm import PgmError, PgmImage, read_pgm, write_pgm
from .smoothing import SmoothingConfig, smooth_image

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_USAGE = 3
EXIT_MISMATCH = 4


class SampleFileError(ValueError):
    """Sample file text that cannot be parsed into numbers."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; remap to this tool's convention (3)
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r") as fh:
        return fh.read()


def parse_sample_file(text: str, weighted: bool = False):
    """Parse sample-file text into (values, weights-or-None).

    One value per non-comment line, or exactly two (value, weight) with
    ``weighted``.  ``#`` starts a comment; blank lines are skipped.
    """
    arity = 2 if weighted else 1
    values: list[float] = []
    weights: list[float] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != arity:
            raise SampleFileError(
                f"line {lineno}: expected {arity} column(s), got {len(parts)}"
            )
        try:
            row = [float(p) for p in parts]
        except ValueError:
            raise SampleFileError(f"line {lineno}: not a number: {body!r}") from None
        values.append(row[0])
        if weighted:
            weights.append(row[1])
    return values, (weights if weighted else None)


def _cmd_mean(args) -> int:
    values, weights = parse_sample_file(_read_text(args.input), args.weighted)
    samples = make_sample_set(values, weights)
    result = exact_robust_mean(samples, args.cutoff)
    line = (
        f"mean={format_number(result.mean)} error={format_number(result.error)} "
        f"window={result.window[0]},{result.window[1]}"
    )
    if args.oracle:
        reference = brute_force_robust_mean(samples, args.cutoff)
        scale = max(abs(result.error), abs(reference.error))
        if abs(result.error - reference.error) <= 1e-9 * max(scale, 1e-300):
            print(f"{line} oracle=ok")
            return EXIT_OK
        print(f"{line} oracle=mismatch brute_error={format_number(reference.error)}")
        print("oracle mismatch: sweep and brute force disagree", file=sys.stderr)
        return EXIT_MISMATCH
    print(line)
    return EXIT_OK


def _cmd_smooth(args) -> int:
    try:
        config = SmoothingConfig(
            window_radius=args.radius, sigma=args.sigma, cutoff=args.cutoff
        )
    except ValueError as exc:
        print(f"robust1d smooth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.threads < 1:
        print("robust1d smooth: error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    image = read_pgm(args.input)
    smoothed = smooth_image(image.pixels, config, threads=args.threads)
    write_pgm(PgmImage(pixels=smoothed, maxval=image.maxval, raw=image.raw), args.output)
    return EXIT_OK


def _cmd_experiment(args) -> int:
    if args.name == "outlier-influence":
        config = OutlierSweepConfig.default(
            inliers=args.inliers,
            start=args.start,
            stop=args.stop,
            step=args.step,
            cutoff=args.cutoff,
        )
        table = experiments.outlier_influence_sweep(config)
    elif args.name == "grid-effect":
        table = experiments.grid_effect_sweep(
            GridSweepConfig.default(d=args.d, step=args.step, spacing=args.spacing)
        )
    else:  # bench
        table = experiments.linearity_benchmark(
            args.sizes, repetitions=args.reps, seed=args.seed
        )
    table.write_csv(args.out)
    print(f"{len(table.rows)} rows", file=sys.stderr)
    return EXIT_OK


def _float_list(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated number list: {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="robust1d", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_mean = sub.add_parser("mean", help="robust mean of a sample file")
    p_mean.add_argument("input", nargs="?", default="-", help="sample file, or - for stdin")
    p_mean.add_argument("--cutoff", type=float, required=True, help="truncation cutoff c > 0")
    p_mean.add_argument(
        "--weighted", action="store_true", help="rows carry 'value weight' pairs"
    )
    p_mean.add_argument(
        "--oracle", action="store_true", help="cross-check against the brute-force reference"
    )

    p_smooth = sub.add_parser("smooth", help="edge-preserving smoothing of a PGM image")
    p_smooth.add_argument("--input", required=True, help="input PGM (P2 or P5)")
    p_smooth.add_argument("--output", required=True, help="output PGM path")
    p_smooth.add_argument("--radius", type=int, default=2, help="window radius (default 2)")
    p_smooth.add_argument("--sigma", type=float, default=1.5, help="Gaussian spatial sigma")
    p_smooth.add_argument("--cutoff", type=float, default=0.1, help="intensity cutoff")
    p_smooth.add_argument(
        "--threads", type=int, default=os.cpu_count() or 1,
        help="row-parallel workers (result is independent of this)",
    )

    p_exp = sub.add_parser("experiment", help="emit an experiment table as CSV")
    p_exp.add_argument("name", choices=("outlier-influence", "grid-effect", "bench"))
    p_exp.add_argument("--out", default="-", help="output CSV path, or - for stdout")
    p_exp.add_argument("--cutoff", type=float, default=1.0, help="outlier-influence cutoff")
    p_exp.add_argument(
        "--inliers", type=_float_list, default=list(experiments.DEFAULT_INLIERS),
        help="outlier-influence inlier values, comma separated",
    )
    p_exp.add_argument("--start", type=float, default=0.0, help="first outlier position")
    p_exp.add_argument("--stop", type=float, default=10.0, help="last outlier position")
    p_exp.add_argument("--step", type=float, default=0.05, help="sweep step")
    p_exp.add_argument("--d", type=float, default=0.6, help="grid-effect half-spread (in spacings)")
    p_exp.add_argument("--spacing", type=float, default=1.0, help="grid-effect channel spacing")
    p_exp.add_argument(
        "--sizes", type=_int_list, default=[100_000, 200_000, 400_000],
        help="bench sizes, comma separated",
    )
    p_exp.add_argument("--reps", type=int, default=5, help="bench repetitions per size")
    p_exp.add_argument("--seed", type=int, default=0, help="bench data seed")
    return parser


_HANDLERS = {"mean": _cmd_mean, "smooth": _cmd_smooth, "experiment": _cmd_experiment}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        return _HANDLERS[args.command](args)
    except (SampleFileError, PgmError) as exc:
        print(f"robust1d {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"robust1d {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, OutOfRangeError) as exc:
        print(f"robust1d {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
