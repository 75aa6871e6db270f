"""
对齐残差：把图像 1 按 H 变换到图像 2 上，统计重叠区域内的差异像素。

d1 为变换后的图像 1 及覆盖掩码 M；d2 为图像 2 在 M 外置零（去掉不重叠部分）；
d3 = |d1 - d2|，仅在 M 内非零。
"""

from dataclasses import dataclass

import numpy as np

from core.exceptions import DegenerateOverlapError
from core.imaging.warping import warp_perspective
from core.models.gray_image import GrayImage, ResidualScore
from core.models.homography import Homography

DEFAULT_MIN_OVERLAP_FRACTION = 0.01


@dataclass(frozen=True, eq=False)
class ResidualLayers:
    """残差计算的中间图层，供调试输出。"""

    d1: GrayImage
    d2: GrayImage
    d3: GrayImage
    mask: np.ndarray


def residual_layers(img1: GrayImage, img2: GrayImage, h: Homography) -> ResidualLayers:
    d1, mask = warp_perspective(img1, h, img2.width, img2.height)
    d2 = np.where(mask, img2.pixels, 0).astype(np.uint8)
    diff = np.abs(d1.pixels.astype(np.int16) - d2.astype(np.int16))
    d3 = np.where(mask, diff, 0).astype(np.uint8)
    return ResidualLayers(
        d1=d1,
        d2=GrayImage(img2.width, img2.height, d2),
        d3=GrayImage(img2.width, img2.height, d3),
        mask=mask,
    )


def score_layers(
    layers: ResidualLayers,
    nonzero_threshold: int = 0,
    min_overlap_fraction: float = DEFAULT_MIN_OVERLAP_FRACTION,
) -> ResidualScore:
    overlap = int(layers.mask.sum())
    total = layers.d3.pixel_count
    if overlap < min_overlap_fraction * total:
        raise DegenerateOverlapError(
            f"Overlap {overlap} px is below {min_overlap_fraction:.2%} of {total} px"
        )
    d3 = layers.d3.pixels
    nonzero = int(np.count_nonzero(layers.mask & (d3 > nonzero_threshold)))
    raw_sum = int(d3[layers.mask].sum(dtype=np.int64))
    return ResidualScore.from_counts(nonzero, raw_sum, overlap)


def alignment_residual(
    img1: GrayImage,
    img2: GrayImage,
    h: Homography,
    nonzero_threshold: int = 0,
    min_overlap_fraction: float = DEFAULT_MIN_OVERLAP_FRACTION,
) -> ResidualScore:
    """
    计算 H 下的对齐残差评分。

    Args:
        img1: 被变换的图像
        img2: 参考图像
        h: 图像 1 到图像 2 的单应矩阵
        nonzero_threshold: d3 大于该值才计为非零像素
        min_overlap_fraction: 重叠像素占图像 2 的最小比例

    Returns:
        ResidualScore，log_score = ln(1 + nonzero_count)
    """
    layers = residual_layers(img1, img2, h)
    return score_layers(layers, nonzero_threshold, min_overlap_fraction)
