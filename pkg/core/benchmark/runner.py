"""
基准运行：对每个图像对、每种描述子、每种度量执行
匹配 -> RANSAC -> 对齐残差，得到一条 ScoreRecord。

单条记录失败只记录状态，不中断运行。RANSAC 种子由 (master_seed, pair_id) 混合得到，
同一图像对的所有度量共用，因此匹配集相同的度量得到完全相同的评分。
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from core.exceptions import (
    BenchmarkError,
    DegenerateOverlapError,
    EmptySetError,
    GeometryError,
)
from core.features.brief_extractor import brief_describe_widths
from core.features.descriptor_file import load_descriptor_file
from core.features.fast_detector import fast_detect
from core.geometry.ground_truth import compare_to_truth, read_homography_file
from core.geometry.homography_estimator import ransac_homography
from core.geometry.splitmix import mix_seed
from core.imaging.pgm_io import load_pgm, save_pgm
from core.imaging.residual import residual_layers, score_layers
from core.matching.brute_force_matcher import match_all_metrics
from core.models.benchmark_config import BenchmarkConfig, PairSpec
from core.models.gray_image import GrayImage
from core.models.homography import Homography
from core.models.keypoint import DescriptorSet
from core.models.metric import MetricId
from core.models.score_record import ScoreRecord, ScoreStatus
from core.monitoring import (
    PerformanceMonitor,
    get_error_tracker,
    get_performance_monitor,
    performance_context,
)
from core.benchmark.pair_list import write_scores
from modules.YA_Common.utils.logger import get_logger

logger = get_logger(__name__)

SCORES_NAME = "scores.csv"
DEBUG_DIR = "debug"
UNKNOWN_DESCRIPTOR = "unknown"


@dataclass
class PairOutcome:
    """单个图像对的全部记录，以及该对的阶段计时与失败信息。"""

    records: List[ScoreRecord]
    timings: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    failures: List[Tuple[str, str]] = field(default_factory=list)


@dataclass
class BenchmarkRun:
    """一次运行的结果：排序后的记录与评分 CSV 路径。"""

    records: List[ScoreRecord]
    scores_path: Path

    @property
    def all_failed(self) -> bool:
        return not any(r.ok for r in self.records)

    def status_counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for r in self.records:
            counts[r.status.value] = counts.get(r.status.value, 0) + 1
        return counts


def ransac_seed(master_seed: int, pair_id: str) -> int:
    return mix_seed(master_seed, pair_id)


def _expected_descriptor_names(config: BenchmarkConfig) -> List[str]:
    if config.uses_builtin:
        return [f"brief{n}" for n in config.descriptor_source.n_bits]
    return [UNKNOWN_DESCRIPTOR]


def _input_error_records(
    pair: PairSpec, names: List[str], metrics: List[MetricId]
) -> List[ScoreRecord]:
    return [
        ScoreRecord(pair.pair_id, name, metric, status=ScoreStatus.INPUT_ERROR)
        for name in names
        for metric in metrics
    ]


def _load_descriptor_sets(
    pair: PairSpec, img1: GrayImage, img2: GrayImage, config: BenchmarkConfig
) -> List[Tuple[str, DescriptorSet, DescriptorSet]]:
    """返回 [(描述子名称, 图像 1 的集合, 图像 2 的集合)]。"""
    if config.uses_builtin:
        src = config.descriptor_source
        sets = []
        for img in (img1, img2):
            kps = fast_detect(img, src.fast_threshold, src.target_n)
            sets.append(brief_describe_widths(img, kps, src.n_bits, src.pattern_seed))
        return [(name, sets[0][name], sets[1][name]) for name in sets[0]]

    if pair.desc_a is None or pair.desc_b is None:
        raise FileNotFoundError(f"Pair '{pair.pair_id}' has no desc_a/desc_b entries")
    set_a = load_descriptor_file(pair.desc_a)
    set_b = load_descriptor_file(pair.desc_b)
    return [(set_a.descriptor_name, set_a, set_b)]


def _dump_layers(config: BenchmarkConfig, pair_id: str, name: str, metric: MetricId, layers) -> None:
    debug_dir = config.output_dir / DEBUG_DIR
    debug_dir.mkdir(parents=True, exist_ok=True)
    stem = f"{pair_id}_{name}_{metric.value}"
    save_pgm(debug_dir / f"{stem}_d1.pgm", layers.d1)
    save_pgm(debug_dir / f"{stem}_d2.pgm", layers.d2)
    save_pgm(debug_dir / f"{stem}_d3.pgm", layers.d3)


def _score_metric(
    pair: PairSpec,
    name: str,
    metric: MetricId,
    matches,
    set_a: DescriptorSet,
    set_b: DescriptorSet,
    img1: GrayImage,
    img2: GrayImage,
    truth: Optional[Homography],
    config: BenchmarkConfig,
    monitor: PerformanceMonitor,
    outcome: PairOutcome,
) -> ScoreRecord:
    base = dict(pair_id=pair.pair_id, descriptor_name=name, metric=metric, match_count=len(matches))
    params = config.ransac.with_seed(ransac_seed(config.master_seed, pair.pair_id))
    try:
        with performance_context("ransac", monitor):
            result = ransac_homography(matches, set_a.keypoints, set_b.keypoints, params)
    except GeometryError as e:
        logger.warning(f"{pair.pair_id}/{name}/{metric.value}: RANSAC failed: {e}")
        outcome.failures.append((type(e).__name__, f"{pair.pair_id}/{name}/{metric.value}"))
        return ScoreRecord(**base, status=ScoreStatus.RANSAC_FAILED)

    h = result.homography
    corner_error = None
    if truth is not None:
        try:
            corner_error = compare_to_truth(h, truth, img1.width, img1.height)
        except GeometryError as e:
            logger.debug(f"{pair.pair_id}/{name}/{metric.value}: corner error undefined: {e}")

    try:
        with performance_context("residual", monitor):
            layers = residual_layers(img1, img2, h)
            score = score_layers(layers, config.nonzero_threshold, config.min_overlap_fraction)
    except DegenerateOverlapError as e:
        logger.warning(f"{pair.pair_id}/{name}/{metric.value}: {e}")
        outcome.failures.append((type(e).__name__, f"{pair.pair_id}/{name}/{metric.value}"))
        return ScoreRecord(
            **base,
            inlier_count=result.inlier_count,
            status=ScoreStatus.DEGENERATE_OVERLAP,
            corner_error=corner_error,
        )
    except GeometryError as e:
        # 估计出的矩阵近奇异、无法求逆做透视变换时，按 RANSAC 失败记录
        logger.warning(f"{pair.pair_id}/{name}/{metric.value}: warp failed: {e}")
        outcome.failures.append((type(e).__name__, f"{pair.pair_id}/{name}/{metric.value}"))
        return ScoreRecord(
            **base,
            inlier_count=result.inlier_count,
            status=ScoreStatus.RANSAC_FAILED,
            corner_error=corner_error,
        )

    if config.dump_debug:
        _dump_layers(config, pair.pair_id, name, metric, layers)

    return ScoreRecord(
        **base,
        inlier_count=result.inlier_count,
        nonzero_count=score.nonzero_count,
        raw_sum=score.raw_sum,
        overlap_pixels=score.overlap_pixels,
        log_score=score.log_score,
        status=ScoreStatus.OK,
        corner_error=corner_error,
    )


def score_pair(pair: PairSpec, config: BenchmarkConfig) -> PairOutcome:
    """计算一个图像对的全部记录（可在子进程中执行）。"""
    monitor = PerformanceMonitor()
    outcome = PairOutcome(records=[])
    logger.info(f"Pair {pair.pair_id}: started")

    try:
        img1 = load_pgm(pair.image1)
        img2 = load_pgm(pair.image2)
        truth = read_homography_file(pair.truth_h) if pair.truth_h is not None else None
        with performance_context("extract", monitor):
            blocks = _load_descriptor_sets(pair, img1, img2, config)
    except (OSError, BenchmarkError) as e:
        logger.warning(f"Pair {pair.pair_id}: input error: {e}")
        outcome.failures.append((type(e).__name__, pair.pair_id))
        outcome.records = _input_error_records(
            pair, _expected_descriptor_names(config), config.metrics
        )
        outcome.timings = monitor.snapshot()
        return outcome

    for name, set_a, set_b in blocks:
        try:
            with performance_context("match", monitor):
                matches_by_metric = match_all_metrics(
                    set_a.descriptors,
                    set_b.descriptors,
                    config.metrics,
                    cross_check=config.cross_check,
                    workers=config.match_workers,
                    chunk_size=config.chunk_size,
                )
        except EmptySetError as e:
            logger.warning(f"Pair {pair.pair_id}/{name}: {e}")
            outcome.failures.append((type(e).__name__, f"{pair.pair_id}/{name}"))
            outcome.records.extend(
                ScoreRecord(pair.pair_id, name, m, match_count=0, status=ScoreStatus.RANSAC_FAILED)
                for m in config.metrics
            )
            continue
        except BenchmarkError as e:
            logger.warning(f"Pair {pair.pair_id}/{name}: input error: {e}")
            outcome.failures.append((type(e).__name__, f"{pair.pair_id}/{name}"))
            outcome.records.extend(_input_error_records(pair, [name], config.metrics))
            continue

        for metric in config.metrics:
            outcome.records.append(
                _score_metric(
                    pair, name, metric, matches_by_metric[metric], set_a, set_b,
                    img1, img2, truth, config, monitor, outcome,
                )
            )

    ok = sum(r.ok for r in outcome.records)
    logger.info(f"Pair {pair.pair_id}: finished, {ok}/{len(outcome.records)} records ok")
    outcome.timings = monitor.snapshot()
    return outcome


def _descriptor_order(config: BenchmarkConfig, outcomes: List[PairOutcome]) -> Dict[str, int]:
    order: Dict[str, int] = {}
    if config.uses_builtin:
        for name in _expected_descriptor_names(config):
            order.setdefault(name, len(order))
    for outcome in outcomes:
        for r in outcome.records:
            order.setdefault(r.descriptor_name, len(order))
    return order


def run_benchmark(config: BenchmarkConfig) -> BenchmarkRun:
    """
    执行基准运行并写出 scores.csv。

    图像对可在多个进程中并行处理；记录按 (pair_id, 描述子顺序, 度量序号) 排序后写出，
    输出与进程数无关。
    """
    config.output_dir.mkdir(parents=True, exist_ok=True)
    logger.info(
        f"Benchmark: {len(config.pair_list)} pairs, metrics "
        f"{','.join(m.value for m in config.metrics)}, workers={config.workers}"
    )

    worker = partial(score_pair, config=config)
    if config.workers > 1 and len(config.pair_list) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(worker, config.pair_list))
    else:
        outcomes = [worker(pair) for pair in config.pair_list]

    monitor = get_performance_monitor()
    tracker = get_error_tracker()
    for outcome in outcomes:
        monitor.merge(outcome.timings)
        for error_type, where in outcome.failures:
            tracker.record(error_type, context={"record": where})

    order = _descriptor_order(config, outcomes)
    records = sorted(
        (r for outcome in outcomes for r in outcome.records),
        key=lambda r: r.sort_key(order),
    )
    scores_path = config.output_dir / SCORES_NAME
    write_scores(scores_path, records)

    run = BenchmarkRun(records=records, scores_path=scores_path)
    monitor.log_metrics()
    tracker.log_error_summary()
    logger.info(f"Wrote {len(records)} records to {scores_path} ({run.status_counts()})")
    return run
