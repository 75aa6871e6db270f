"""
五种二值距离度量。所有度量都是距离：越小越相似，取值在 [0, 1]。

Hamming 返回不一致位比例 (f01 + f10) / n，即 1 减去一致位比例；
在候选集上对前者取 argmin 等价于对后者取 argmax。

退化分母的约定：
- Jaccard / Dice 分母为 0 时返回 0；
- Correlation 的 sigma 为 0 时，无不一致位返回 0，否则返回 1/2；
- Yule 分母为 0 时，无不一致位返回 0，否则返回 1。

标量 distance() 与矩阵形式 distance_arrays() 走同一条表达式，
匹配结果中的距离与逐对重新计算的结果逐位一致。
"""

import numpy as np

from core.descriptors.contingency import contingency
from core.models.binary_descriptor import BinaryDescriptor, ContingencyCounts
from core.models.metric import MetricId


def distance_arrays(metric: MetricId, f00, f01, f10, f11) -> np.ndarray:
    """对同形状的计数数组逐元素求距离，返回 float64 数组。"""
    f00 = np.asarray(f00, dtype=np.float64)
    f01 = np.asarray(f01, dtype=np.float64)
    f10 = np.asarray(f10, dtype=np.float64)
    f11 = np.asarray(f11, dtype=np.float64)
    mismatch = f10 + f01

    with np.errstate(divide="ignore", invalid="ignore"):
        if metric is MetricId.HAMMING:
            return mismatch / (f00 + f01 + f10 + f11)

        if metric is MetricId.JACCARD:
            den = f11 + f10 + f01
            return np.where(den > 0, mismatch / den, 0.0)

        if metric is MetricId.CORRELATION:
            sigma = np.sqrt((f10 + f11) * (f01 + f00) * (f11 + f01) * (f00 + f10))
            value = 0.5 - (f11 * f00 - f10 * f01) / (2.0 * sigma)
            value = np.where(sigma > 0, value, np.where(mismatch > 0, 0.5, 0.0))
            return np.clip(value, 0.0, 1.0)

        if metric is MetricId.DICE:
            den = 2.0 * f11 + f10 + f01
            return np.where(den > 0, mismatch / den, 0.0)

        if metric is MetricId.YULE:
            den = f11 * f00 + f10 * f01
            return np.where(den > 0, (f10 * f01) / den, np.where(mismatch > 0, 1.0, 0.0))

    raise ValueError(f"Unhandled metric: {metric}")


def distance(metric: MetricId, c: ContingencyCounts) -> float:
    return float(distance_arrays(metric, c.f00, c.f01, c.f10, c.f11))


def distance_between(metric: MetricId, a: BinaryDescriptor, b: BinaryDescriptor) -> float:
    return distance(metric, contingency(a, b))


def similarity_hamming(c: ContingencyCounts) -> float:
    """按一致位比例 (f11 + f00) / n 给出的 Hamming 相似度。"""
    return (c.f11 + c.f00) / c.n_bits
