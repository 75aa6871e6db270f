"""基准评测工具 - 运行评测、生成报告、合成数据集、匹配描述子文件"""
from typing import Any, Dict, List, Optional

from tools import bench_tool
from modules.YA_Common.utils.errors import from_domain_error
from modules.YA_Common.utils.logger import get_logger
from core.exceptions import BenchmarkError
from core.models.metric import MetricId

logger = get_logger(__name__)


def _format_success_response(message: str, data: Dict[str, Any]) -> Dict[str, Any]:
    return {"status": "success", "message": message, **data}


def _format_error_response(error: Exception, context: Dict[str, Any]) -> Dict[str, Any]:
    if isinstance(error, BenchmarkError):
        err = from_domain_error(error, context).to_error().to_dict()
        return {"status": "error", "error_type": type(error).__name__, **err}
    return {
        "status": "error",
        "error_type": type(error).__name__,
        "message": str(error),
        "context": context,
    }


@bench_tool(
    name="run_benchmark",
    title="Run Benchmark",
    description="对图像对清单执行 匹配 -> RANSAC -> 对齐残差 评测，写出 scores.csv",
)
def run_benchmark(
    pairs: str,
    out: str,
    desc: str = "builtin",
    metrics: Optional[str] = None,
    nbits: Optional[List[int]] = None,
    keypoints: Optional[int] = None,
    ransac_thresh: Optional[float] = None,
    seed: Optional[int] = None,
    cross_check: Optional[bool] = None,
) -> Dict[str, Any]:
    context = {"pairs": pairs, "out": out, "desc": desc}
    try:
        from setup import get_core

        core = get_core()
        config = core.make_config(
            pairs,
            out,
            desc=desc,
            metrics=MetricId.parse_list(metrics) if metrics else None,
            n_bits=nbits,
            target_n=keypoints,
            ransac_thresh=ransac_thresh,
            seed=seed,
            cross_check=cross_check,
        )
        run = core.bench(config)
        return _format_success_response(
            f"Scored {len(run.records)} records",
            {
                "scores_path": str(run.scores_path),
                "status_counts": run.status_counts(),
                "all_failed": run.all_failed,
            },
        )
    except (BenchmarkError, OSError) as e:
        logger.error(f"Benchmark failed: {e}")
        return _format_error_response(e, context)


@bench_tool(
    name="build_report",
    title="Build Report",
    description="由 scores.csv 计算方差分析、McNemar 与均值汇总，写出 CSV 与 report.md",
)
def build_report(scores: str, out: str, value: str = "log_score") -> Dict[str, Any]:
    context = {"scores": scores, "out": out}
    try:
        from setup import get_core

        bundle = get_core().report(scores, out, value=value)
        return _format_success_response(
            f"Report written for {len(bundle.blocks)} descriptor block(s)",
            {
                "files": [str(p) for p in bundle.files],
                "anova": {b.descriptor_name: b.anova.to_dict() for b in bundle.blocks},
                "skipped": bundle.skipped,
            },
        )
    except (BenchmarkError, OSError) as e:
        logger.error(f"Report failed: {e}")
        return _format_error_response(e, context)


@bench_tool(
    name="synth_dataset",
    title="Synthesize Dataset",
    description="生成带真值单应矩阵的合成图像对数据集（PGM + H 文本 + pairs.csv）",
)
def synth_dataset(
    out: str,
    seed: Optional[int] = None,
    pairs: Optional[int] = None,
    size: Optional[int] = None,
    self_pair: Optional[bool] = None,
) -> Dict[str, Any]:
    context = {"out": out, "seed": seed}
    try:
        from setup import get_core

        specs = get_core().synth(out, seed=seed, n_pairs=pairs, image_size=size, self_pair=self_pair)
        return _format_success_response(
            f"Synthesized {len(specs)} pairs",
            {"pair_ids": [p.pair_id for p in specs]},
        )
    except (BenchmarkError, OSError) as e:
        logger.error(f"Synthesis failed: {e}")
        return _format_error_response(e, context)


@bench_tool(
    name="match_descriptors",
    title="Match Descriptors",
    description="读取两个 BDSC 描述子文件，按指定度量做暴力匹配",
    read_only=True,
)
def match_descriptors(
    desc_a: str, desc_b: str, metric: str = "hamming", cross_check: Optional[bool] = None
) -> Dict[str, Any]:
    context = {"desc_a": desc_a, "desc_b": desc_b, "metric": metric}
    try:
        from setup import get_core

        matches = get_core().match(desc_a, desc_b, MetricId.parse(metric), cross_check)
        return _format_success_response(
            f"{len(matches)} matches",
            {"matches": [[m.query_idx, m.train_idx, m.dist] for m in matches]},
        )
    except (BenchmarkError, OSError) as e:
        logger.error(f"Matching failed: {e}")
        return _format_error_response(e, context)
