"""
单应矩阵、点对应与 RANSAC 参数数据模型。
"""

import math
from dataclasses import dataclass
from typing import Dict, Any, Sequence, Tuple, Union

import numpy as np

from core.exceptions import DegenerateGeometryError, ParameterError

SCALE_EPS = 1e-12
DET_EPS = 1e-12


def _normalize(m: np.ndarray) -> np.ndarray:
    if abs(m[2, 2]) > SCALE_EPS:
        return m / m[2, 2]
    norm = float(np.linalg.norm(m))
    if norm == 0.0:
        raise DegenerateGeometryError("Homography matrix is all zeros")
    m = m / norm
    # 固定符号：第一个非零元素为正
    flat = m.ravel()
    first = flat[np.flatnonzero(flat)[0]]
    return m if first > 0 else -m


@dataclass(frozen=True, eq=False)
class Homography:
    """
    3x3 射影变换，把图像 1 的坐标映射到图像 2。

    构造时归一化：|h22| > 1e-12 时令 h22 = 1，否则 Frobenius 范数为 1；
    归一化后 |det| 必须大于 1e-12。
    """

    h: np.ndarray

    def __post_init__(self):
        m = np.array(self.h, dtype=np.float64).reshape(3, 3)
        if not np.all(np.isfinite(m)):
            raise DegenerateGeometryError("Homography has non-finite entries")
        m = _normalize(m)
        if abs(np.linalg.det(m)) <= DET_EPS:
            raise DegenerateGeometryError("Homography is singular")
        m.setflags(write=False)
        object.__setattr__(self, "h", m)

    @classmethod
    def from_matrix(cls, m: Union[np.ndarray, Sequence[Sequence[float]]]) -> "Homography":
        return cls(np.asarray(m, dtype=np.float64))

    @classmethod
    def identity(cls) -> "Homography":
        return cls(np.eye(3))

    @classmethod
    def translation(cls, tx: float, ty: float) -> "Homography":
        return cls(np.array([[1.0, 0.0, tx], [0.0, 1.0, ty], [0.0, 0.0, 1.0]]))

    def inverse(self) -> "Homography":
        """伴随矩阵求逆；射影意义下缩放无关，省去除以行列式。"""
        m = self.h
        adj = np.array(
            [
                [
                    m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1],
                    m[0, 2] * m[2, 1] - m[0, 1] * m[2, 2],
                    m[0, 1] * m[1, 2] - m[0, 2] * m[1, 1],
                ],
                [
                    m[1, 2] * m[2, 0] - m[1, 0] * m[2, 2],
                    m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0],
                    m[0, 2] * m[1, 0] - m[0, 0] * m[1, 2],
                ],
                [
                    m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0],
                    m[0, 1] * m[2, 0] - m[0, 0] * m[2, 1],
                    m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0],
                ],
            ]
        )
        return Homography(adj)

    def compose(self, other: "Homography") -> "Homography":
        """返回先应用 other、再应用 self 的变换。"""
        return Homography(self.h @ other.h)

    def to_rows(self) -> Tuple[Tuple[float, ...], ...]:
        return tuple(tuple(float(v) for v in row) for row in self.h)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Homography):
            return NotImplemented
        return bool(np.array_equal(self.h, other.h))

    def __hash__(self) -> int:
        return hash(self.h.tobytes())

    def to_dict(self) -> Dict[str, Any]:
        return {"h": [list(row) for row in self.to_rows()]}


@dataclass(frozen=True)
class PointCorrespondence:
    """图像 1 中 (x1, y1) 与图像 2 中 (x2, y2) 的像素坐标对应。"""

    x1: float
    y1: float
    x2: float
    y2: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x1, self.y1, self.x2, self.y2)):
            raise ParameterError("Correspondence coordinates must be finite")


@dataclass(frozen=True)
class RansacParams:
    """RANSAC 参数；默认值对应常用设置。"""

    reproj_threshold: float = 3.0
    max_iters: int = 2000
    confidence: float = 0.995
    seed: int = 0

    def __post_init__(self):
        if self.reproj_threshold <= 0:
            raise ParameterError("reproj_threshold must be positive")
        if self.max_iters < 1:
            raise ParameterError("max_iters must be a positive integer")
        if not 0.0 < self.confidence < 1.0:
            raise ParameterError("confidence must be in (0, 1)")
        if not 0 <= self.seed < 2**64:
            raise ParameterError("seed must be an unsigned 64-bit integer")

    def with_seed(self, seed: int) -> "RansacParams":
        return RansacParams(self.reproj_threshold, self.max_iters, self.confidence, seed)
