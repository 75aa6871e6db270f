"""
真值单应矩阵：Oxford 风格文本读写与角点转移误差。
"""

import math
from pathlib import Path
from typing import Union

from core.exceptions import FormatError
from core.geometry.homography_estimator import project
from core.models.homography import Homography


def parse_homography_text(text: str) -> Homography:
    """9 个空白分隔的十进制数，行优先。"""
    tokens = text.split()
    if len(tokens) != 9:
        raise FormatError(f"Homography text needs 9 numbers, got {len(tokens)}")
    try:
        values = [float(t) for t in tokens]
    except ValueError as e:
        raise FormatError(f"Invalid number in homography text: {e}")
    return Homography.from_matrix([values[0:3], values[3:6], values[6:9]])


def format_homography_text(h: Homography) -> str:
    return "".join(" ".join(repr(v) for v in row) + "\n" for row in h.to_rows())


def read_homography_file(path: Union[str, Path]) -> Homography:
    return parse_homography_text(Path(path).read_text(encoding="utf-8"))


def write_homography_file(path: Union[str, Path], h: Homography) -> None:
    Path(path).write_text(format_homography_text(h), encoding="utf-8")


def compare_to_truth(h_est: Homography, h_true: Homography, width: int, height: int) -> float:
    """图像四个角点分别经两个矩阵映射后的平均欧氏距离（像素）。"""
    corners = [(0.0, 0.0), (width - 1.0, 0.0), (width - 1.0, height - 1.0), (0.0, height - 1.0)]
    total = 0.0
    for x, y in corners:
        ex, ey = project(h_est, x, y)
        tx, ty = project(h_true, x, y)
        total += math.hypot(ex - tx, ey - ty)
    return total / len(corners)
