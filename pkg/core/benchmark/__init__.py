"""
基准评测流程：图像对清单、合成数据、运行与报告。
"""

from .pair_list import read_pair_list, write_pair_list, read_scores, write_scores
from .synth import synth_dataset, synth_texture, random_homography
from .runner import run_benchmark, score_pair, ransac_seed, BenchmarkRun, PairOutcome
from .report import (
    build_report,
    build_score_matrix,
    write_report,
    report_from_csv,
    render_markdown,
    ReportBundle,
    DescriptorReport,
)

__all__ = [
    "read_pair_list",
    "write_pair_list",
    "read_scores",
    "write_scores",
    "synth_dataset",
    "synth_texture",
    "random_homography",
    "run_benchmark",
    "score_pair",
    "ransac_seed",
    "BenchmarkRun",
    "PairOutcome",
    "build_report",
    "build_score_matrix",
    "write_report",
    "report_from_csv",
    "render_markdown",
    "ReportBundle",
    "DescriptorReport",
]
