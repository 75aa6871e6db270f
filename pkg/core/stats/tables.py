"""
统计结果的表格化：CSV 行与对齐文本（markdown）表格。
"""

from typing import Any, Dict, List, Optional, Sequence

from core.models.statistics import AnovaTable, McNemarMatrix, ScoreMatrix

ANOVA_COLUMNS = ["Source", "df", "SS", "MS", "F", "P-value", "F crit"]
MEANS_COLUMNS = ["Metric", "mean", "std"]


def _fmt(value: Optional[float], digits: int = 2) -> str:
    return "" if value is None else f"{value:.{digits}f}"


def anova_to_rows(table: AnovaTable, display: bool = False) -> List[Dict[str, Any]]:
    """
    方差分析表的行。display 为 True 时数值保留两位小数（P 值显示为 "0.00" 一类），
    否则保留完整精度。
    """
    rows = []
    for row in table.rows:
        values = [row.ss, row.ms, row.f, row.p_value, row.f_crit]
        if display:
            cells = [_fmt(v) for v in values]
        else:
            cells = ["" if v is None else repr(float(v)) for v in values]
        rows.append(dict(zip(ANOVA_COLUMNS, [row.source.value, str(row.df), *cells])))
    return rows


def mcnemar_to_rows(matrix: McNemarMatrix) -> List[Dict[str, Any]]:
    """上三角布局：第 i 行第 j 列（j > i）为渲染后的单元格，其余为空。"""
    labels = matrix.labels
    rows = []
    for i, label in enumerate(labels):
        row = {"": label}
        for j, other in enumerate(labels):
            row[other] = matrix.cells[(i, j)].render() if j > i else ""
        rows.append(row)
    return rows


def means_to_rows(m: ScoreMatrix) -> List[Dict[str, Any]]:
    """每个度量（列）的平均评分与标准差。"""
    means = m.values.mean(axis=0)
    stds = m.values.std(axis=0, ddof=1)
    return [
        {"Metric": label, "mean": repr(float(mu)), "std": repr(float(sd))}
        for label, mu, sd in zip(m.col_labels, means, stds)
    ]


def markdown_table(rows: Sequence[Dict[str, Any]], headers: Optional[Sequence[str]] = None) -> str:
    """列宽对齐的 markdown 表格。"""
    if headers is None:
        headers = list(rows[0].keys()) if rows else []
    cells = [[str(r.get(h, "")) for h in headers] for r in rows]
    widths = [max([len(str(h))] + [len(c[k]) for c in cells]) for k, h in enumerate(headers)]
    widths = [max(w, 3) for w in widths]

    def line(values: Sequence[str]) -> str:
        return "| " + " | ".join(v.ljust(w) for v, w in zip(values, widths)) + " |"

    out = [line([str(h) for h in headers]), "| " + " | ".join("-" * w for w in widths) + " |"]
    out.extend(line(c) for c in cells)
    return "\n".join(out) + "\n"


def display_means(rows: Sequence[Dict[str, Any]]) -> List[Dict[str, Any]]:
    return [
        {"Metric": r["Metric"], "mean": f"{float(r['mean']):.4f}", "std": f"{float(r['std']):.4f}"}
        for r in rows
    ]
