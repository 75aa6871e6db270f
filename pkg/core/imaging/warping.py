"""
透视变换：逆向映射 + 双线性插值。

输出像素 (x, y) 经 H 的逆映射到源图 (u, v)；仅当 0 <= u <= width-1 且
0 <= v <= height-1 时该像素被覆盖，取双线性插值并四舍五入（半数进位）到 8 位。
"""

from typing import Tuple

import numpy as np

from core.models.gray_image import GrayImage
from core.models.homography import Homography

W_EPS = 1e-12


def inverse_map(h: Homography, out_w: int, out_h: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    输出网格在源图中的坐标。

    Returns:
        (u, v, valid)，形状均为 (out_h, out_w)；valid 为 False 处齐次分量接近 0
    """
    m = h.inverse().h
    ys, xs = np.mgrid[0:out_h, 0:out_w].astype(np.float64)
    w = m[2, 0] * xs + m[2, 1] * ys + m[2, 2]
    valid = np.abs(w) >= W_EPS
    safe_w = np.where(valid, w, 1.0)
    u = (m[0, 0] * xs + m[0, 1] * ys + m[0, 2]) / safe_w
    v = (m[1, 0] * xs + m[1, 1] * ys + m[1, 2]) / safe_w
    return u, v, valid


def bilinear_sample(pixels: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """在 [0, width-1] x [0, height-1] 内的坐标处做双线性插值，返回 float64。"""
    height, width = pixels.shape
    x0 = np.floor(u).astype(np.int64)
    y0 = np.floor(v).astype(np.int64)
    x1 = np.minimum(x0 + 1, width - 1)
    y1 = np.minimum(y0 + 1, height - 1)
    fx = u - x0
    fy = v - y0
    img = pixels.astype(np.float64)
    return (
        (1.0 - fx) * (1.0 - fy) * img[y0, x0]
        + fx * (1.0 - fy) * img[y0, x1]
        + (1.0 - fx) * fy * img[y1, x0]
        + fx * fy * img[y1, x1]
    )


def warp_perspective(
    src: GrayImage, h: Homography, out_w: int, out_h: int
) -> Tuple[GrayImage, np.ndarray]:
    """
    把 src 按 H 变换到 out_w x out_h 的画布上。

    Returns:
        (变换后的图像, (out_h, out_w) 布尔覆盖掩码)；未覆盖像素为 0
    """
    u, v, valid = inverse_map(h, out_w, out_h)
    covered = (
        valid
        & (u >= 0.0)
        & (u <= src.width - 1)
        & (v >= 0.0)
        & (v <= src.height - 1)
    )
    uc = np.where(covered, u, 0.0)
    vc = np.where(covered, v, 0.0)
    values = np.floor(bilinear_sample(src.pixels, uc, vc) + 0.5)
    out = np.where(covered, np.clip(values, 0, 255), 0).astype(np.uint8)
    return GrayImage(out_w, out_h, out), covered
