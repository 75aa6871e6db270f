"""
命令行入口：descbench bench | report | synth | match

退出码：0 成功；1 领域错误或全部记录失败；2 参数错误。
"""

import argparse
import csv
import sys
from typing import List, Optional

from core.exceptions import BenchmarkError, ParameterError
from core.models.metric import MetricId
from modules.YA_Common.utils.logger import get_logger, set_console_level

logger = get_logger("cli")

EXIT_OK = 0
EXIT_FAILURE = 1


def _metric_list(text: str) -> List[MetricId]:
    try:
        return MetricId.parse_list(text)
    except ParameterError as e:
        raise argparse.ArgumentTypeError(str(e))


def _metric(text: str) -> MetricId:
    try:
        return MetricId.parse(text)
    except ParameterError as e:
        raise argparse.ArgumentTypeError(str(e))


def _int_list(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _u64(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{text}'")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="descbench",
        description="Binary descriptor distance-metric benchmark",
    )
    parser.add_argument("--config", default=None, help="Config file (yaml/json)")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug console logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="Score every pair under every metric")
    bench.add_argument("--pairs", required=True, help="Pair list CSV")
    bench.add_argument("--desc", choices=["builtin", "files"], default="builtin", help="Descriptor source")
    bench.add_argument("--metrics", type=_metric_list, default=None, help="Comma-separated metric names")
    bench.add_argument("--nbits", type=_int_list, default=None, help="BRIEF widths, e.g. 256 or 256,512")
    bench.add_argument("--keypoints", type=int, default=None, help="FAST keypoints per image")
    bench.add_argument("--ransac-thresh", type=float, default=None, help="RANSAC inlier threshold (px)")
    bench.add_argument("--seed", type=_u64, default=None, help="Master seed")
    bench.add_argument("--cross-check", action="store_true", default=None, help="Keep mutual best matches only")
    bench.add_argument("--workers", type=int, default=None, help="Parallel pair workers")
    bench.add_argument("--dump-debug", action="store_true", default=None, help="Write d1/d2/d3 PGMs")
    bench.add_argument("--out", required=True, help="Output directory")

    report = sub.add_parser("report", help="ANOVA, McNemar and means from a score CSV")
    report.add_argument("--scores", required=True, help="Score CSV written by bench")
    report.add_argument("--value", choices=["log_score", "nonzero_count", "raw_sum"], default="log_score")
    report.add_argument("--out", required=True, help="Output directory")

    synth = sub.add_parser("synth", help="Generate a synthetic dataset with ground truth")
    synth.add_argument("--seed", type=_u64, default=None, help="Dataset seed")
    synth.add_argument("--pairs", type=int, default=None, help="Number of pairs")
    synth.add_argument("--size", type=int, default=None, help="Image size (px)")
    synth.add_argument("--self-pair", action=argparse.BooleanOptionalAction, default=None,
                       help="Add an identical-image pair")
    synth.add_argument("--out", required=True, help="Output directory")

    match = sub.add_parser("match", help="Brute-force match two BDSC files")
    match.add_argument("--desc-a", required=True, help="Query descriptor file")
    match.add_argument("--desc-b", required=True, help="Train descriptor file")
    match.add_argument("--metric", type=_metric, default=MetricId.HAMMING, help="Metric name")
    match.add_argument("--cross-check", action="store_true", default=None, help="Keep mutual best matches only")
    return parser


def _cmd_bench(core, args: argparse.Namespace) -> int:
    config = core.make_config(
        args.pairs,
        args.out,
        desc=args.desc,
        metrics=args.metrics,
        n_bits=args.nbits,
        target_n=args.keypoints,
        ransac_thresh=args.ransac_thresh,
        seed=args.seed,
        cross_check=args.cross_check,
        workers=args.workers,
        dump_debug=args.dump_debug,
    )
    run = core.bench(config)
    if run.all_failed:
        logger.error(f"Every record failed ({run.status_counts()})")
        return EXIT_FAILURE
    return EXIT_OK


def _cmd_report(core, args: argparse.Namespace) -> int:
    bundle = core.report(args.scores, args.out, value=args.value)
    for name, reason in bundle.skipped.items():
        logger.warning(f"Skipped {name}: {reason}")
    return EXIT_OK


def _cmd_synth(core, args: argparse.Namespace) -> int:
    core.synth(args.out, seed=args.seed, n_pairs=args.pairs, image_size=args.size, self_pair=args.self_pair)
    return EXIT_OK


def _cmd_match(core, args: argparse.Namespace) -> int:
    matches = core.match(args.desc_a, args.desc_b, args.metric, args.cross_check)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["query_idx", "train_idx", "dist"])
    for m in matches:
        writer.writerow([m.query_idx, m.train_idx, repr(m.dist)])
    return EXIT_OK


COMMANDS = {
    "bench": _cmd_bench,
    "report": _cmd_report,
    "synth": _cmd_synth,
    "match": _cmd_match,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        set_console_level("DEBUG")
    elif args.quiet:
        set_console_level("WARNING")

    from setup import setup

    try:
        core = setup(args.config)
        return COMMANDS[args.command](core, args)
    except (BenchmarkError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
