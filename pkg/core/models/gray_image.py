"""
灰度图像与残差评分数据模型。
"""

import math
from dataclasses import dataclass
from typing import Dict, Any, Tuple

import numpy as np

from core.exceptions import ParameterError


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8 位灰度图像，像素按行优先存放为 (height, width) 的只读数组。"""

    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ParameterError("Image width and height must be at least 1")
        px = np.array(self.pixels, dtype=np.uint8, copy=True)
        if px.size != self.width * self.height:
            raise ParameterError(
                f"Pixel count {px.size} does not match {self.width}x{self.height}"
            )
        px = px.reshape(self.height, self.width)
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @classmethod
    def from_array(cls, array: np.ndarray) -> "GrayImage":
        arr = np.asarray(array)
        if arr.ndim != 2:
            raise ParameterError("Gray image array must be two-dimensional")
        if arr.dtype != np.uint8:
            if arr.min(initial=0) < 0 or arr.max(initial=0) > 255:
                raise ParameterError("Pixel values must be within [0, 255]")
            arr = arr.astype(np.uint8)
        return cls(arr.shape[1], arr.shape[0], arr)

    @classmethod
    def filled(cls, width: int, height: int, value: int = 0) -> "GrayImage":
        return cls(width, height, np.full((height, width), value, dtype=np.uint8))

    @property
    def size(self) -> Tuple[int, int]:
        return (self.width, self.height)

    @property
    def pixel_count(self) -> int:
        return self.width * self.height

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and bool(np.array_equal(self.pixels, other.pixels))
        )

    def __hash__(self) -> int:
        return hash((self.width, self.height, self.pixels.tobytes()))


@dataclass(frozen=True)
class ResidualScore:
    """对齐残差评分：非零像素计数、差值和、重叠像素数与对数评分。"""

    nonzero_count: int
    raw_sum: int
    overlap_pixels: int
    log_score: float

    def __post_init__(self):
        if self.nonzero_count < 0 or self.raw_sum < 0:
            raise ValueError("Residual counts must be non-negative")
        if self.nonzero_count > self.overlap_pixels:
            raise ValueError("nonzero_count cannot exceed overlap_pixels")

    @classmethod
    def from_counts(cls, nonzero_count: int, raw_sum: int, overlap_pixels: int) -> "ResidualScore":
        return cls(nonzero_count, raw_sum, overlap_pixels, math.log1p(nonzero_count))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "nonzero_count": self.nonzero_count,
            "raw_sum": self.raw_sum,
            "overlap_pixels": self.overlap_pixels,
            "log_score": self.log_score,
        }
