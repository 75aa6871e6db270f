"""
McNemar 成对比较：按样本统计胜负，带连续性校正的 z 值。

评分越低精度越高，A 的评分小于 B 时记 A 胜；相等为平局，不参与计数。
"""

import math
from typing import Sequence

import numpy as np

from core.exceptions import ShapeError
from core.models.statistics import McNemarDirection, McNemarMatrix, McNemarResult, ScoreMatrix

DEFAULT_Z_THRESHOLD = 2.576


def mcnemar_pair(
    scores_a: Sequence[float],
    scores_b: Sequence[float],
    z_threshold: float = DEFAULT_Z_THRESHOLD,
) -> McNemarResult:
    a = np.asarray(scores_a, dtype=np.float64)
    b = np.asarray(scores_b, dtype=np.float64)
    if a.ndim != 1 or a.shape != b.shape:
        raise ShapeError(f"Score lists must be 1-D with equal lengths, got {a.shape} and {b.shape}")
    if a.size == 0:
        raise ShapeError("Score lists must not be empty")

    n_a = int(np.count_nonzero(a < b))
    n_b = int(np.count_nonzero(a > b))
    n_ties = int(a.size - n_a - n_b)

    if n_a == n_b:
        z, direction = 0.0, McNemarDirection.NONE
    else:
        z = max(0.0, (abs(n_a - n_b) - 1) / math.sqrt(n_a + n_b))
        direction = McNemarDirection.FIRST_BETTER if n_a > n_b else McNemarDirection.SECOND_BETTER
    return McNemarResult(
        z=z,
        direction=direction,
        n_first_better=n_a,
        n_second_better=n_b,
        n_ties=n_ties,
        significant=z >= z_threshold,
    )


def pairwise_mcnemar(m: ScoreMatrix, z_threshold: float = DEFAULT_Z_THRESHOLD) -> McNemarMatrix:
    """对评分矩阵的每一对列 (i < j) 做 McNemar 比较。"""
    cols = m.shape[1]
    result = McNemarMatrix(labels=list(m.col_labels))
    for i in range(cols):
        for j in range(i + 1, cols):
            result.cells[(i, j)] = mcnemar_pair(m.column(i), m.column(j), z_threshold)
    return result
