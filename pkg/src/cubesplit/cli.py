"""Command-line front end.

    cubesplit encode --scheme cs2 --dim 4 --bits 4 < vectors.txt > codes.txt
    cubesplit decode --scheme cs2 --dim 4 --bits 4 < codes.txt
    cubesplit bench --scheme cs2 --dim 4 --bits 4 --samples 100000 --seed 1 --out run.csv
    cubesplit bounds --dim 4 --total-bits 12
    cubesplit uniformity --scheme cs2 --dim 4 --samples 100000 --seed 1
    cubesplit selftest

Exit status: 0 on success, 1 on usage errors, 2 on data errors.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
import warnings

from . import bench
from .baselines import distortion_bounds
from .core import CubeSplitError, DimensionError, format_vector, read_vectors, renormalize_input
from .quantizer import QuantizerConfig, Scheme, decode, encode

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_bits(text: str, n_coords: int) -> tuple[int, ...]:
    """``"4"`` replicates over every coordinate; ``"4,4,3"`` lists them."""
    try:
        values = [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"--bits must be an integer or a comma-separated list, got {text!r}")
    if len(values) == 1:
        return tuple(values) * n_coords
    if len(values) != n_coords:
        raise UsageError(f"--bits lists {len(values)} values, scheme needs {n_coords}")
    return tuple(values)


def _config(args, bits: str | None = None) -> QuantizerConfig:
    scheme = Scheme(args.scheme)
    if args.dim < 2:
        raise UsageError("--dim must be >= 2")
    n_coords = args.dim - 1 if scheme is Scheme.REAL else 2 * args.dim - 2
    try:
        return QuantizerConfig(scheme, args.dim, parse_bits(bits or args.bits, n_coords))
    except (ValueError, DimensionError) as exc:
        raise UsageError(str(exc))


@contextlib.contextmanager
def _open(path, mode, default):
    if path is None or path == "-":
        yield default
    else:
        with open(path, mode) as fh:
            yield fh


def cmd_encode(args) -> int:
    cfg = _config(args)
    with _open(args.input, "r", sys.stdin) as src, _open(args.out, "w", sys.stdout) as dst:
        for lineno, v in enumerate(read_vectors(src, complex_=cfg.scheme.is_complex), 1):
            if v.shape[0] != cfg.dim:
                raise CubeSplitError(f"line {lineno}: expected dimension {cfg.dim}, got {v.shape[0]}")
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                v = renormalize_input(v)
            for w in caught:
                print(f"warning: line {lineno}: {w.message}", file=sys.stderr)
            dst.write(encode(v, cfg) + "\n")
    return EXIT_OK


def cmd_decode(args) -> int:
    cfg = _config(args)
    with _open(args.input, "r", sys.stdin) as src, _open(args.out, "w", sys.stdout) as dst:
        for line in src:
            bits = line.strip()
            if bits:
                dst.write(format_vector(decode(bits, cfg)) + "\n")
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    configs = [_config(args, b) for b in (args.bits or ["4"])]
    text = bench.sweep(configs, args.samples, args.seed, workers=args.workers)
    with _open(args.out, "w", sys.stdout) as dst:
        dst.write(text)
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.dim < 2:
        raise UsageError("--dim must be >= 2")
    if args.total_bits < 1:
        raise UsageError("--total-bits must be >= 1")
    b = distortion_bounds(args.dim, args.total_bits)
    print(f"{b.lower:.17g}")
    print(f"{b.upper:.17g}")
    return EXIT_OK


def cmd_uniformity(args) -> int:
    if args.samples < 100:
        raise UsageError("--samples must be >= 100 for a meaningful KS test")
    if args.dim < 2:
        raise UsageError("--dim must be >= 2")
    reports = bench.uniformity(args.scheme, args.dim, args.samples, args.seed)
    with _open(args.out, "w", sys.stdout) as dst:
        dst.write(bench.format_ks_reports(reports))
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_selftest
    ok = run_selftest(sys.stdout, samples=args.samples, seed=args.seed)
    return EXIT_OK if ok else EXIT_DATA


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cubesplit", description="Cube-split Grassmannian quantizers")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def scheme_args(p, bits=True):
        p.add_argument("--scheme", choices=[s.value for s in Scheme], required=True)
        p.add_argument("--dim", type=int, required=True)
        if bits:
            p.add_argument("--bits", required=True,
                           help="bits per coordinate: one integer or a comma-separated list")

    p = sub.add_parser("encode", help="vectors -> codewords")
    scheme_args(p)
    p.add_argument("--in", dest="input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="codewords -> vectors")
    scheme_args(p)
    p.add_argument("--in", dest="input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("bench", help="Monte Carlo distortion, CSV output")
    scheme_args(p, bits=False)
    p.add_argument("--bits", action="append",
                   help="bit allocation; repeat the flag for one CSV row per allocation")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("bounds", help="high-resolution distortion bounds")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--total-bits", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("uniformity", help="KS test of the companded coordinates")
    scheme_args(p, bits=False)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_uniformity)

    p = sub.add_parser("selftest", help="quick internal consistency checks")
    p.add_argument("--samples", type=int, default=20_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cubesplit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CubeSplitError, OSError) as exc:
        print(f"cubesplit: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
