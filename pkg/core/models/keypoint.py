"""
关键点、描述子集合与 BRIEF 采样模式数据模型。
"""

from dataclasses import dataclass, field
from typing import Dict, Any, List, Tuple

import numpy as np

from core.exceptions import DescriptorLengthError, ParameterError
from core.models.binary_descriptor import BinaryDescriptor

PATCH_RADIUS = 15


@dataclass(frozen=True)
class Keypoint:
    """图像中的角点：像素坐标与角点响应。"""

    x: float
    y: float
    score: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {"x": self.x, "y": self.y, "score": self.score}


@dataclass
class DescriptorSet:
    """
    一张图像的关键点与描述子，两个列表一一对应。

    dropped_indices 记录提取时因靠近边界而被丢弃的输入关键点下标。
    """

    keypoints: List[Keypoint]
    descriptors: List[BinaryDescriptor]
    descriptor_name: str
    dropped_indices: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if len(self.keypoints) != len(self.descriptors):
            raise DescriptorLengthError(
                f"{len(self.keypoints)} keypoints but {len(self.descriptors)} descriptors"
            )
        widths = {d.n_bits for d in self.descriptors}
        if len(widths) > 1:
            raise DescriptorLengthError(f"Mixed descriptor widths in set: {sorted(widths)}")

    def __len__(self) -> int:
        return len(self.descriptors)

    @property
    def n_bits(self) -> int:
        return self.descriptors[0].n_bits if self.descriptors else 0

    def points(self) -> np.ndarray:
        """(N, 2) 的关键点坐标数组。"""
        return np.array([[kp.x, kp.y] for kp in self.keypoints], dtype=np.float64).reshape(-1, 2)


@dataclass(frozen=True, eq=False)
class SamplingPattern:
    """BRIEF 风格采样模式：每一位对应一对偏移 (dx_p, dy_p, dx_q, dy_q)，位于 31x31 邻域内。"""

    offsets: np.ndarray

    def __post_init__(self):
        arr = np.array(self.offsets, dtype=np.int64).reshape(-1, 4)
        if arr.size and np.abs(arr).max() > PATCH_RADIUS:
            raise ParameterError(f"Sampling offsets must lie in [-{PATCH_RADIUS}, {PATCH_RADIUS}]")
        arr.setflags(write=False)
        object.__setattr__(self, "offsets", arr)

    @property
    def n_bits(self) -> int:
        return int(self.offsets.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SamplingPattern):
            return NotImplemented
        return bool(np.array_equal(self.offsets, other.offsets))

    def __hash__(self) -> int:
        return hash(self.offsets.tobytes())
