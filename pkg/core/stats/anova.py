"""
无重复双因素方差分析（图像对 x 度量）。
"""

import numpy as np

from core.exceptions import DegenerateVarianceError, ParameterError
from core.models.statistics import AnovaRow, AnovaSource, AnovaTable, ScoreMatrix
from core.stats.distributions import f_critical, f_sf
from modules.YA_Common.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_ALPHA = 0.05
# 误差平方和相对总平方和低于该比例视为完全可加
DEGENERATE_RATIO = 1e-12


def two_way_anova(m: ScoreMatrix, alpha: float = DEFAULT_ALPHA) -> AnovaTable:
    """
    对评分矩阵做双因素方差分析。

    Args:
        m: R x C 评分矩阵，行为图像对，列为度量
        alpha: 计算 F 临界值的显著性水平

    Returns:
        AnovaTable，含 Image pairs / Metrics / Error 三行
    """
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    x = m.values
    rows, cols = x.shape
    grand = x.mean()
    row_means = x.mean(axis=1)
    col_means = x.mean(axis=0)

    ss_total = float(((x - grand) ** 2).sum())
    ss_rows = float(cols * ((row_means - grand) ** 2).sum())
    ss_cols = float(rows * ((col_means - grand) ** 2).sum())
    residual = x - row_means[:, None] - col_means[None, :] + grand
    ss_error = float((residual ** 2).sum())

    df_rows = rows - 1
    df_cols = cols - 1
    df_error = df_rows * df_cols

    if ss_error <= DEGENERATE_RATIO * ss_total:
        raise DegenerateVarianceError(
            f"Error mean square is zero for a {rows}x{cols} matrix (perfectly additive scores)"
        )

    ms_rows = ss_rows / df_rows
    ms_cols = ss_cols / df_cols
    ms_error = ss_error / df_error
    f_rows = ms_rows / ms_error
    f_cols = ms_cols / ms_error

    table = AnovaTable(
        image_pairs=AnovaRow(
            AnovaSource.IMAGE_PAIRS, df_rows, ss_rows, ms_rows,
            f=f_rows, p_value=f_sf(f_rows, df_rows, df_error),
            f_crit=f_critical(alpha, df_rows, df_error),
        ),
        metrics=AnovaRow(
            AnovaSource.METRICS, df_cols, ss_cols, ms_cols,
            f=f_cols, p_value=f_sf(f_cols, df_cols, df_error),
            f_crit=f_critical(alpha, df_cols, df_error),
        ),
        error=AnovaRow(AnovaSource.ERROR, df_error, ss_error, ms_error),
        ss_total=ss_total,
        alpha=alpha,
    )
    logger.debug(f"ANOVA {rows}x{cols}: F(pairs)={f_rows:.4g}, F(metrics)={f_cols:.4g}")
    return table
