"""
BRIEF 风格二进制描述子提取。

图像先经 5x5 盒式滤波（积分图，边界复制），第 i 位为
smoothed(kp + p_i) < smoothed(kp + q_i)。盒内求和与求均值比较结果相同，这里直接比较和。
"""

from typing import Dict, Iterable, List, Tuple

import numpy as np

from core.exceptions import ParameterError
from core.geometry.splitmix import SplitMix64
from core.models.binary_descriptor import BinaryDescriptor
from core.models.gray_image import GrayImage
from core.models.keypoint import PATCH_RADIUS, DescriptorSet, Keypoint, SamplingPattern
from modules.YA_Common.utils.logger import get_logger

logger = get_logger(__name__)

SUPPORTED_WIDTHS = (128, 256, 512)
BORDER = PATCH_RADIUS + 1
BOX_RADIUS = 2
DEFAULT_PATTERN_SEED = 24301


def descriptor_name_for(n_bits: int) -> str:
    return f"brief{n_bits}"


def generate_pattern(n_bits: int, seed: int) -> SamplingPattern:
    """由种子生成采样模式；每位依次抽取 dx_p, dy_p, dx_q, dy_q。"""
    rng = SplitMix64(seed)
    span = 2 * PATCH_RADIUS + 1
    offsets = [
        [rng.next_below(span) - PATCH_RADIUS for _ in range(4)] for _ in range(n_bits)
    ]
    return SamplingPattern(np.array(offsets, dtype=np.int64).reshape(-1, 4))


def integral_image(img: GrayImage, pad: int = BOX_RADIUS) -> np.ndarray:
    """边界复制填充后的积分图，首行首列为 0。"""
    padded = np.pad(img.pixels.astype(np.int64), pad, mode="edge")
    ii = np.zeros((padded.shape[0] + 1, padded.shape[1] + 1), dtype=np.int64)
    ii[1:, 1:] = padded.cumsum(axis=0).cumsum(axis=1)
    return ii


def box_sums(ii: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """以 (xs, ys) 为中心的 5x5 盒内像素和，坐标为原图坐标。"""
    size = 2 * BOX_RADIUS + 1
    return ii[ys + size, xs + size] - ii[ys, xs + size] - ii[ys + size, xs] + ii[ys, xs]


def split_keypoints(img: GrayImage, kps: Iterable[Keypoint]) -> Tuple[List[Keypoint], List[int]]:
    """按边界规则划分关键点：距任一边界不足 16 像素的被丢弃。"""
    kept, dropped = [], []
    for idx, kp in enumerate(kps):
        x = int(np.floor(kp.x + 0.5))
        y = int(np.floor(kp.y + 0.5))
        if BORDER <= x <= img.width - 1 - BORDER and BORDER <= y <= img.height - 1 - BORDER:
            kept.append(kp)
        else:
            dropped.append(idx)
    return kept, dropped


def _describe_with(
    ii: np.ndarray, kept: List[Keypoint], pattern: SamplingPattern
) -> List[BinaryDescriptor]:
    if not kept:
        return []
    cx = np.floor(np.array([kp.x for kp in kept]) + 0.5).astype(np.int64)[:, None]
    cy = np.floor(np.array([kp.y for kp in kept]) + 0.5).astype(np.int64)[:, None]
    off = pattern.offsets
    p = box_sums(ii, cx + off[:, 0], cy + off[:, 1])
    q = box_sums(ii, cx + off[:, 2], cy + off[:, 3])
    packed = np.packbits(p < q, axis=1, bitorder="little")
    return [BinaryDescriptor(row.tobytes(), pattern.n_bits) for row in packed]


def brief_describe(
    img: GrayImage,
    kps: Iterable[Keypoint],
    n_bits: int = 256,
    pattern_seed: int = DEFAULT_PATTERN_SEED,
) -> DescriptorSet:
    """
    计算 BRIEF 描述子。

    Args:
        img: 灰度图像
        kps: 关键点
        n_bits: 位宽，128/256/512
        pattern_seed: 采样模式种子

    Returns:
        DescriptorSet，名称为 "brief{n_bits}"，dropped_indices 为被丢弃的输入下标
    """
    return brief_describe_widths(img, kps, (n_bits,), pattern_seed)[descriptor_name_for(n_bits)]


def brief_describe_widths(
    img: GrayImage,
    kps: Iterable[Keypoint],
    widths: Iterable[int],
    pattern_seed: int = DEFAULT_PATTERN_SEED,
) -> Dict[str, DescriptorSet]:
    """在同一组关键点上一次计算多种位宽的描述子，返回 {名称: DescriptorSet}。"""
    widths = list(widths)
    for n_bits in widths:
        if n_bits not in SUPPORTED_WIDTHS:
            raise ParameterError(
                f"Unsupported BRIEF width {n_bits}; expected one of {SUPPORTED_WIDTHS}"
            )
    kept, dropped = split_keypoints(img, kps)
    ii = integral_image(img)
    result: Dict[str, DescriptorSet] = {}
    for n_bits in widths:
        pattern = generate_pattern(n_bits, pattern_seed)
        name = descriptor_name_for(n_bits)
        result[name] = DescriptorSet(
            keypoints=list(kept),
            descriptors=_describe_with(ii, kept, pattern),
            descriptor_name=name,
            dropped_indices=tuple(dropped),
        )
    logger.debug(f"BRIEF {widths}: {len(kept)} described, {len(dropped)} dropped at border")
    return result
