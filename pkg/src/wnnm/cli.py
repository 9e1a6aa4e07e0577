"""Command-line interface: solve instances from CSV, denoise PGM images,
and run the verification suites.

Exit codes: 0 success, 1 selftest failure, 2 input error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .denoise import DenoiseConfig, DenoiseStats, denoise, psnr
from .exceptions import InvalidInputError, PreconditionError, WnnmError
from .pgm import read_pgm, write_pgm
from .selftest import run_selftest
from .solver import nnm_solve, wnnm_solve

EXIT_OK = 0
EXIT_SELFTEST_FAIL = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


def read_matrix_csv(path) -> np.ndarray:
    """Parse a headerless comma-separated matrix, dimensions inferred."""
    rows = []
    width = None
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            cells = line.split(",")
            if width is None:
                width = len(cells)
            elif len(cells) != width:
                raise InvalidInputError(
                    f"{path}: line {lineno}: expected {width} columns, got {len(cells)}"
                )
            row = []
            for colno, cell in enumerate(cells, start=1):
                try:
                    row.append(float(cell))
                except ValueError:
                    raise InvalidInputError(
                        f"{path}: line {lineno}, column {colno}: not a number: {cell!r}"
                    ) from None
            rows.append(row)
    if not rows:
        raise InvalidInputError(f"{path}: empty matrix")
    return np.array(rows)


def write_matrix_csv(path, m: np.ndarray) -> None:
    # repr() emits the shortest decimal that round-trips the float exactly.
    with open(path, "w", encoding="ascii") as fh:
        for row in np.atleast_2d(m):
            fh.write(",".join(repr(float(x)) for x in row) + "\n")


def _format_vector(v) -> str:
    return "[" + ", ".join(repr(float(x)) for x in v) + "]"


def cmd_solve(args) -> int:
    try:
        y = read_matrix_csv(args.matrix)
        if args.weights is not None:
            w = read_matrix_csv(args.weights).ravel()
            if w.size != min(y.shape):
                raise InvalidInputError(
                    f"weights file has {w.size} entries, expected {min(y.shape)}"
                )
        else:
            w = np.full(min(y.shape), args.lam)
            if args.lam < 0:
                raise InvalidInputError("lambda must be nonnegative")
    except (InvalidInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.weights is None and args.force_path is None:
            result = nnm_solve(y, args.lam)
        else:
            result = wnnm_solve(y, w, force_path=args.force_path)
        write_matrix_csv(args.out, result.x_star)
    except (InvalidInputError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except WnnmError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    print(f"objective: {result.objective!r}")
    print(f"path: {result.path.value}")
    print(f"d: {_format_vector(result.d.d)}")
    return EXIT_OK


def cmd_denoise(args) -> int:
    try:
        noisy = read_pgm(args.input)
        cfg = DenoiseConfig(
            noise_sigma=args.sigma,
            patch_size=args.patch,
            group_size=args.group,
            search_window=args.window,
            stride=args.stride,
            weight_constant=args.c,
        )
    except (InvalidInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        stats = DenoiseStats()
        out = denoise(noisy, cfg, stats=stats)
        write_pgm(args.output, out)
    except WnnmError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    print(f"groups processed: {stats.groups}")
    print(f"mean group rank after shrinkage: {stats.mean_rank:.3f}")
    print(f"psnr noisy vs denoised: {psnr(noisy, out):.3f} dB")
    return EXIT_OK


def cmd_selftest(args) -> int:
    inject = os.environ.get("WNNM_SELFTEST_INJECT_BUG") == "1"  # test-only hook
    return run_selftest(seed=args.seed, scale=args.scale, inject_bug=inject)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wnnm", description="Weighted nuclear norm minimization toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one WNNM/NNM instance from CSV files")
    p.add_argument("--matrix", required=True, help="input matrix CSV (no header)")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--weights", help="one-line CSV of per-singular-value weights")
    grp.add_argument("--lambda", dest="lam", type=float, help="uniform weight")
    p.add_argument("--out", required=True, help="output CSV for the solution matrix")
    p.add_argument("--force-path", choices=["closed", "pava"], default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("denoise", help="denoise a binary PGM image")
    p.add_argument("--in", dest="input", required=True, help="input PGM (P5)")
    p.add_argument("--out", dest="output", required=True, help="output PGM")
    p.add_argument("--sigma", type=float, required=True, help="noise standard deviation")
    p.add_argument("--patch", type=int, default=7)
    p.add_argument("--group", type=int, default=16)
    p.add_argument("--window", type=int, default=20)
    p.add_argument("--stride", type=int, default=3)
    p.add_argument("--c", type=float, default=DenoiseConfig.__dataclass_fields__["weight_constant"].default)
    p.set_defaults(func=cmd_denoise)

    p = sub.add_parser("selftest", help="run the seeded verification suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--scale", choices=["small", "full", "0"], default="small")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
