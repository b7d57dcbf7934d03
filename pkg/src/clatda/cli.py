"""Command-line driver: ``clatda <subcommand> [options]``.

Exit status is 0 on success, 1 on bad input or domain errors and 2 when a
resource budget is exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import __version__, bench, cla, kernels, verify
from .diagram_metrics import bottleneck_distance
from .errors import ClatdaError, DomainError, ResourceLimitError
from .geometry import format_csv, read_csv
from .persistence import barcodes_to_json, compute_persistence, read_barcodes
from .rips import DEFAULT_BUDGET, build_rips
from .synth import GeneratorSpec

log = logging.getLogger("clatda")


class UsageError(ClatdaError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def int_list(text: str) -> list[int]:
    """Parse ``"1,2,5"``, ``"0..49"`` (inclusive) or ``"1000:5000:1000"``
    (inclusive stop), or a comma-joined mix."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        try:
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            elif ":" in part:
                bits = [int(b) for b in part.split(":")]
                step = bits[2] if len(bits) > 2 else 1
                if step <= 0:
                    raise ValueError
                out.extend(range(bits[0], bits[1] + 1, step))
            else:
                out.append(int(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None
    return out


def float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from None


def scale_arg(text: str) -> float | str:
    if text == "auto":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"scale must be a number or 'auto', got {text!r}") from None


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_gen(args) -> None:
    spec = GeneratorSpec(args.kind, args.dim, args.count, args.seed, normalize=not args.raw)
    header = f"kind={args.kind} dim={args.dim} count={args.count} seed={args.seed}"
    _emit(format_csv(spec.generate(), header), args.out)


def cmd_reduce(args) -> None:
    cloud = read_csv(args.input)
    if (args.delta is None) == (args.rate is None):
        raise UsageError("reduce: give exactly one of --delta or --rate")
    if args.delta is not None:
        delta = args.delta
    else:
        solution = cla.delta_for_rate(cloud, args.rate, args.tolerance)
        delta = solution.delta
        log.info("delta=%.17g reaches rate %.4f (%d points)", delta, solution.rate, solution.size)
    reduced = cla.reduce(cloud, delta, args.strategy)
    header = f"delta={delta:.17g} strategy={args.strategy} from={cloud.shape[0]} to={reduced.shape[0]}"
    _emit(format_csv(reduced, header), args.out)


def cmd_pd(args) -> None:
    cloud = read_csv(args.input)
    complex_ = build_rips(cloud, args.max_degree, args.max_scale, args.budget)
    log.info("complex: %d simplices, scale cap %.6g", len(complex_), complex_.scale_cap)
    if args.dump:
        with open(args.dump, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(complex_.dump())
    barcodes = compute_persistence(complex_, args.max_degree, method=args.method)
    _emit(barcodes_to_json(barcodes), args.out)


def _pick(path: str, degree: int):
    for barcode in read_barcodes(path):
        if barcode.degree == degree:
            return barcode
    raise DomainError(f"{path} has no degree-{degree} barcode")


def cmd_bottleneck(args) -> None:
    value = bottleneck_distance(_pick(args.a, args.degree), _pick(args.b, args.degree))
    print(f"{value:.17g}")


def cmd_verify(args) -> None:
    seeds = args.seeds if args.seeds is not None else [args.seed]
    reports = verify.run_grid(
        args.dims, args.counts, args.rates, seeds,
        strategies=args.strategies, max_degree=args.max_degree, kind=args.kind,
        tolerance=args.tolerance, budget=args.budget, jobs=args.jobs,
    )
    _emit(verify.format_reports(reports), args.out)
    summary = verify.summarize(reports)
    log.info("verify summary: %s", json.dumps(summary, default=float))
    if summary["bound_reduced_violations"] or summary["bound_center_violations"]:
        raise DomainError(f"stability bound violated: {summary}")


def cmd_bench(args) -> None:
    seeds = args.seeds if args.seeds is not None else [args.seed]
    records = bench.run_bench(
        args.dims, args.counts, args.rates, seeds, args.repeats,
        strategy=args.strategy, max_degree=args.max_degree, max_scale=args.max_scale,
        kind=args.kind, tolerance=args.tolerance, budget=args.budget,
    )
    _emit(bench.format_records(records), args.out)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="simplex cap")
    common.add_argument("--quiet", action="store_true", help="only report errors")

    parser = _Parser(prog="clatda", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"clatda {__version__} ({kernels.BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    strategies = [s.value for s in cla.Strategy]

    p = sub.add_parser("gen", parents=[common], help="generate a point cloud")
    p.add_argument("--kind", choices=["sphere", "random"], required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--raw", action="store_true", help="skip normalization to [0, 100]^m")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", parents=[common], help="lattice-reduce a point cloud")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--delta", type=float)
    p.add_argument("--rate", type=float)
    p.add_argument("--tolerance", type=float, default=0.01)
    p.add_argument("--strategy", choices=strategies, default="center")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("pd", aliases=["persist"], parents=[common], help="barcodes of a point cloud")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--max-degree", type=int, default=1)
    p.add_argument("--max-scale", type=scale_arg, default="auto")
    p.add_argument("--method", choices=["coboundary", "boundary"], default="coboundary")
    p.add_argument("--dump", help="write the filtered complex, one simplex per line")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pd)

    p = sub.add_parser("bottleneck", parents=[common], help="bottleneck distance of two barcodes")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_bottleneck)

    p = sub.add_parser("verify", parents=[common], help="check the stability bounds on a grid")
    p.add_argument("--dims", type=int_list, default=[2, 3])
    p.add_argument("--counts", type=int_list, default=[50, 100, 150])
    p.add_argument("--rates", type=float_list, default=[0.1, 0.3, 0.5])
    p.add_argument("--seeds", type=int_list)
    p.add_argument("--strategies", type=lambda t: t.split(","), default=strategies)
    p.add_argument("--max-degree", type=int, default=1)
    p.add_argument("--kind", choices=["sphere", "random"], default="random")
    p.add_argument("--tolerance", type=float, default=0.05)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="time persistence with and without reduction")
    p.add_argument("--dims", type=int_list, default=[2])
    p.add_argument("--counts", type=int_list, default=[1000, 2000])
    p.add_argument("--rates", type=float_list, default=[0.0, 0.1, 0.3, 0.5])
    p.add_argument("--seeds", type=int_list)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--strategy", choices=strategies, default="center")
    p.add_argument("--max-degree", type=int, default=1)
    p.add_argument("--max-scale", type=scale_arg, default=None)
    p.add_argument("--kind", choices=["sphere", "random"], default="random")
    p.add_argument("--tolerance", type=float, default=0.01)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )
    config = {k: v for k, v in vars(args).items() if k != "func"}
    print("config: " + json.dumps(config, sort_keys=True, default=str), file=sys.stderr)
    try:
        args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ClatdaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
