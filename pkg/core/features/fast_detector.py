"""
FAST-9 角点检测。

以半径 3 的 16 像素 Bresenham 圆为邻域：若圆上有至少 9 个连续像素全部亮于
center + t 或全部暗于 center - t，则该像素为角点。响应值为所有满足条件的
连续弧段上 |circle - center| 之和。3x3 非极大值抑制后按响应值取前 target_n 个。
"""

from typing import List

import numpy as np

from core.exceptions import GeometryError, ParameterError
from core.models.gray_image import GrayImage
from core.models.keypoint import Keypoint
from modules.YA_Common.utils.logger import get_logger

logger = get_logger(__name__)

CIRCLE_OFFSETS = (
    (0, -3), (1, -3), (2, -2), (3, -1),
    (3, 0), (3, 1), (2, 2), (1, 3),
    (0, 3), (-1, 3), (-2, 2), (-3, 1),
    (-3, 0), (-3, -1), (-2, -2), (-1, -3),
)
ARC_LENGTH = 9
CIRCLE_RADIUS = 3
MIN_IMAGE_SIZE = 2 * CIRCLE_RADIUS + 1
DEFAULT_TARGET_N = 5000


def _arc_members(flags: np.ndarray) -> np.ndarray:
    """
    flags 形状为 (16, H, W)。返回同形状布尔数组：圆上该位置是否属于
    某个长度不小于 9 的连续（循环）同类弧段。
    """
    windows = np.ones_like(flags)
    for k in range(ARC_LENGTH):
        windows &= np.roll(flags, -k, axis=0)
    # windows[s] 表示从 s 开始的 9 个位置全部满足
    members = np.zeros_like(flags)
    for k in range(ARC_LENGTH):
        members |= np.roll(windows, k, axis=0)
    return members


def fast_score_map(img: GrayImage, t: int) -> np.ndarray:
    """
    逐像素 FAST-9 响应图，非角点与距边界不足 3 像素的位置为 0。

    Returns:
        (height, width) 的 float64 数组
    """
    if img.width < MIN_IMAGE_SIZE or img.height < MIN_IMAGE_SIZE:
        raise GeometryError(
            f"Image {img.width}x{img.height} is smaller than {MIN_IMAGE_SIZE}x{MIN_IMAGE_SIZE}"
        )
    if t < 1:
        raise ParameterError(f"FAST threshold must be >= 1, got {t}")

    pix = img.pixels.astype(np.int32)
    r = CIRCLE_RADIUS
    h, w = pix.shape
    center = pix[r:h - r, r:w - r]
    circle = np.stack(
        [pix[r + dy:h - r + dy, r + dx:w - r + dx] for dx, dy in CIRCLE_OFFSETS]
    )
    absdiff = np.abs(circle - center)

    brighter = _arc_members(circle > center + t)
    darker = _arc_members(circle < center - t)
    # 两类不可能同时有 9 个连续像素，合并后即为合格弧段
    members = brighter | darker
    scores = np.where(members, absdiff, 0).sum(axis=0).astype(np.float64)

    out = np.zeros((h, w), dtype=np.float64)
    out[r:h - r, r:w - r] = scores
    return out


def non_max_suppression(scores: np.ndarray) -> np.ndarray:
    """3x3 非极大值抑制：响应为正且不小于 8 邻域中任何一个的位置保留。"""
    padded = np.pad(scores, 1, mode="constant", constant_values=0.0)
    h, w = scores.shape
    keep = scores > 0
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            if dx == 0 and dy == 0:
                continue
            keep &= scores >= padded[1 + dy:1 + dy + h, 1 + dx:1 + dx + w]
    return keep


def fast_detect(img: GrayImage, t: int, target_n: int = DEFAULT_TARGET_N) -> List[Keypoint]:
    """
    检测 FAST-9 角点。

    Args:
        img: 灰度图像，至少 7x7
        t: 亮度阈值，>= 1
        target_n: 返回的最多关键点数

    Returns:
        按响应值降序（相同则 y、x 升序）排列的关键点
    """
    if target_n < 0:
        raise ParameterError(f"target_n must be >= 0, got {target_n}")
    scores = fast_score_map(img, t)
    keep = non_max_suppression(scores)
    ys, xs = np.nonzero(keep)
    vals = scores[ys, xs]
    order = np.lexsort((xs, ys, -vals))[:target_n]
    keypoints = [
        Keypoint(x=float(xs[i]), y=float(ys[i]), score=float(vals[i])) for i in order
    ]
    logger.debug(f"FAST t={t}: {len(ys)} corners after NMS, kept {len(keypoints)}")
    return keypoints
