"""
评分报告：按描述子类型分块，构建评分矩阵并输出方差分析、McNemar 与均值汇总。

只保留在该块所有度量下都为 ok 的图像对（成对完整），其余图像对被丢弃并在报告中列出。
"""

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from core.exceptions import DegenerateVarianceError, ReportError, ShapeError
from core.models.metric import MetricId
from core.models.score_record import ScoreRecord
from core.models.statistics import AnovaTable, McNemarMatrix, ScoreMatrix
from core.stats.anova import DEFAULT_ALPHA, two_way_anova
from core.stats.mcnemar import DEFAULT_Z_THRESHOLD, pairwise_mcnemar
from core.stats.tables import (
    ANOVA_COLUMNS,
    MEANS_COLUMNS,
    anova_to_rows,
    display_means,
    markdown_table,
    mcnemar_to_rows,
    means_to_rows,
)
from core.benchmark.pair_list import read_scores
from modules.YA_Common.utils.logger import get_logger

logger = get_logger(__name__)

REPORT_NAME = "report.md"
SCORE_FIELDS = ("log_score", "nonzero_count", "raw_sum")


@dataclass
class DescriptorReport:
    """一个描述子块的统计结果。"""

    descriptor_name: str
    matrix: ScoreMatrix
    anova: AnovaTable
    mcnemar: McNemarMatrix
    means: List[Dict[str, str]]
    dropped_pairs: List[str] = field(default_factory=list)


@dataclass
class ReportBundle:
    blocks: List[DescriptorReport]
    skipped: Dict[str, str] = field(default_factory=dict)
    files: List[Path] = field(default_factory=list)


def build_score_matrix(
    records: Iterable[ScoreRecord], descriptor_name: str, value: str = "log_score"
) -> Tuple[ScoreMatrix, List[str]]:
    """
    构建一个描述子块的评分矩阵（行：图像对，列：按度量序号排列）。

    Returns:
        (ScoreMatrix, 被丢弃的图像对)

    Raises:
        ReportError: 成对完整的图像对少于 2 个或度量少于 2 个
    """
    if value not in SCORE_FIELDS:
        raise ReportError(f"Unknown score field '{value}'; use one of {SCORE_FIELDS}")
    block = [r for r in records if r.descriptor_name == descriptor_name]
    metrics: List[MetricId] = sorted({r.metric for r in block}, key=lambda m: m.ordinal)
    by_pair: Dict[str, Dict[MetricId, float]] = {}
    for r in block:
        cells = by_pair.setdefault(r.pair_id, {})
        if r.ok and getattr(r, value) is not None:
            cells[r.metric] = float(getattr(r, value))

    complete = sorted(pid for pid, cells in by_pair.items() if len(cells) == len(metrics))
    complete_set = set(complete)
    dropped = sorted(pid for pid in by_pair if pid not in complete_set)
    if len(metrics) < 2 or len(complete) < 2:
        raise ReportError(
            f"{descriptor_name}: need >= 2 complete pairs across >= 2 metrics, "
            f"got {len(complete)} pairs and {len(metrics)} metrics"
        )
    values = [[by_pair[pid][m] for m in metrics] for pid in complete]
    try:
        matrix = ScoreMatrix(values, complete, [m.label for m in metrics])
    except ShapeError as e:
        raise ReportError(f"{descriptor_name}: {e}") from e
    return matrix, dropped


def build_report(
    records: Sequence[ScoreRecord],
    alpha: float = DEFAULT_ALPHA,
    z_threshold: float = DEFAULT_Z_THRESHOLD,
    value: str = "log_score",
) -> ReportBundle:
    """
    为每个描述子块计算统计结果。数据不足的块被跳过并记录原因；
    所有块都不足时抛出 ReportError。
    """
    names: List[str] = []
    for r in records:
        if r.descriptor_name not in names:
            names.append(r.descriptor_name)

    bundle = ReportBundle(blocks=[])
    for name in names:
        try:
            matrix, dropped = build_score_matrix(records, name, value)
        except ReportError as e:
            logger.warning(str(e))
            bundle.skipped[name] = str(e)
            continue
        try:
            anova = two_way_anova(matrix, alpha)
        except DegenerateVarianceError as e:
            logger.warning(f"{name}: {e}")
            bundle.skipped[name] = str(e)
            continue
        if dropped:
            logger.warning(f"{name}: dropped incomplete pairs {', '.join(dropped)}")
        bundle.blocks.append(
            DescriptorReport(
                descriptor_name=name,
                matrix=matrix,
                anova=anova,
                mcnemar=pairwise_mcnemar(matrix, z_threshold),
                means=means_to_rows(matrix),
                dropped_pairs=dropped,
            )
        )
    if not bundle.blocks:
        raise ReportError("No descriptor block has enough complete data for a report")
    return bundle


def _write_csv(path: Path, headers: Sequence[str], rows: Sequence[Dict[str, str]]) -> Path:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=list(headers), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return path


def _matrix_rows(block: DescriptorReport) -> List[Dict[str, str]]:
    m = block.matrix
    return [
        {"pair_id": pid, **{label: repr(float(v)) for label, v in zip(m.col_labels, row)}}
        for pid, row in zip(m.row_labels, m.values)
    ]


def render_markdown(bundle: ReportBundle) -> str:
    parts = ["# Descriptor metric benchmark report\n"]
    for block in bundle.blocks:
        rows, cols = block.matrix.shape
        parts.append(f"## {block.descriptor_name}\n")
        parts.append(f"{rows} image pairs x {cols} metrics.\n")
        if block.dropped_pairs:
            parts.append(f"Dropped incomplete pairs: {', '.join(block.dropped_pairs)}\n")
        parts.append(f"### ANOVA (alpha = {block.anova.alpha})\n")
        parts.append(markdown_table(anova_to_rows(block.anova, display=True), ANOVA_COLUMNS))
        parts.append("### McNemar z-scores\n")
        mc_rows = mcnemar_to_rows(block.mcnemar)
        parts.append(markdown_table(mc_rows, [""] + block.mcnemar.labels))
        significant = [
            f"{block.mcnemar.labels[i]} vs {block.mcnemar.labels[j]}"
            for (i, j), res in sorted(block.mcnemar.cells.items())
            if res.significant
        ]
        if significant:
            parts.append(f"Significant: {'; '.join(significant)}\n")
        parts.append("### Means\n")
        parts.append(markdown_table(display_means(block.means), MEANS_COLUMNS))
    for name, reason in bundle.skipped.items():
        parts.append(f"## {name}\n\nSkipped: {reason}\n")
    return "\n".join(parts)


def write_report(bundle: ReportBundle, out_dir: Union[str, Path]) -> List[Path]:
    """写出每块的 matrix/anova/mcnemar/means CSV 与合并的 report.md。"""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for block in bundle.blocks:
        name = block.descriptor_name
        files.append(
            _write_csv(
                out / f"matrix_{name}.csv",
                ["pair_id", *block.matrix.col_labels],
                _matrix_rows(block),
            )
        )
        files.append(_write_csv(out / f"anova_{name}.csv", ANOVA_COLUMNS, anova_to_rows(block.anova)))
        files.append(
            _write_csv(
                out / f"mcnemar_{name}.csv",
                ["", *block.mcnemar.labels],
                mcnemar_to_rows(block.mcnemar),
            )
        )
        files.append(_write_csv(out / f"means_{name}.csv", MEANS_COLUMNS, block.means))
    report_path = out / REPORT_NAME
    report_path.write_text(render_markdown(bundle), encoding="utf-8")
    files.append(report_path)
    bundle.files = files
    logger.info(f"Report for {len(bundle.blocks)} descriptor block(s) written to {out}")
    return files


def report_from_csv(
    scores_path: Union[str, Path],
    out_dir: Union[str, Path],
    alpha: float = DEFAULT_ALPHA,
    z_threshold: float = DEFAULT_Z_THRESHOLD,
    value: str = "log_score",
) -> ReportBundle:
    records = read_scores(scores_path)
    if not records:
        raise ReportError(f"{scores_path}: no score records")
    bundle = build_report(records, alpha, z_threshold, value)
    write_report(bundle, out_dir)
    return bundle
