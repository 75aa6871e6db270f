"""
统计检验数据模型：评分矩阵、方差分析表与 McNemar 结果。
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Any, List, Optional, Sequence

import numpy as np

from core.exceptions import ShapeError


@dataclass(frozen=True, eq=False)
class ScoreMatrix:
    """R x C 评分矩阵：行为图像对，列为度量。"""

    values: np.ndarray
    row_labels: Sequence[str] = ()
    col_labels: Sequence[str] = ()

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        if v.ndim != 2:
            raise ShapeError("Score matrix must be two-dimensional")
        rows, cols = v.shape
        if rows < 2 or cols < 2:
            raise ShapeError(f"Score matrix needs at least 2x2 entries, got {rows}x{cols}")
        if not np.all(np.isfinite(v)):
            raise ShapeError("Score matrix entries must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        row_labels = tuple(self.row_labels) or tuple(str(i) for i in range(rows))
        col_labels = tuple(self.col_labels) or tuple(str(j) for j in range(cols))
        if len(row_labels) != rows or len(col_labels) != cols:
            raise ShapeError("Label counts must match the matrix shape")
        object.__setattr__(self, "row_labels", row_labels)
        object.__setattr__(self, "col_labels", col_labels)

    @property
    def shape(self):
        return self.values.shape

    def column(self, j: int) -> np.ndarray:
        return self.values[:, j]


class AnovaSource(Enum):
    """方差来源。"""

    IMAGE_PAIRS = "Image pairs"
    METRICS = "Metrics"
    ERROR = "Error"


@dataclass(frozen=True)
class AnovaRow:
    """方差分析表中的一行；误差行没有 F、P 值与临界值。"""

    source: AnovaSource
    df: int
    ss: float
    ms: float
    f: Optional[float] = None
    p_value: Optional[float] = None
    f_crit: Optional[float] = None


@dataclass(frozen=True)
class AnovaTable:
    """无重复双因素方差分析结果。"""

    image_pairs: AnovaRow
    metrics: AnovaRow
    error: AnovaRow
    ss_total: float
    alpha: float = 0.05

    @property
    def rows(self) -> List[AnovaRow]:
        return [self.image_pairs, self.metrics, self.error]

    def to_dict(self) -> Dict[str, Any]:
        return {
            row.source.value: {
                "df": row.df,
                "SS": row.ss,
                "MS": row.ms,
                "F": row.f,
                "P-value": row.p_value,
                "F crit": row.f_crit,
            }
            for row in self.rows
        }


class McNemarDirection(Enum):
    """箭头指向精度更高的一方。"""

    FIRST_BETTER = "first_better"
    SECOND_BETTER = "second_better"
    NONE = "none"

    @property
    def arrow(self) -> str:
        return _ARROWS[self]


_ARROWS = {
    McNemarDirection.FIRST_BETTER: "<-",
    McNemarDirection.SECOND_BETTER: "^",
    McNemarDirection.NONE: "=",
}


@dataclass(frozen=True)
class McNemarResult:
    """两组配对评分的 McNemar z 值与胜负计数。"""

    z: float
    direction: McNemarDirection
    n_first_better: int
    n_second_better: int
    n_ties: int
    significant: bool = False

    def __post_init__(self):
        balanced = self.n_first_better == self.n_second_better
        if balanced != (self.direction is McNemarDirection.NONE):
            raise ValueError("direction must be NONE exactly when win counts are equal")
        if self.z < 0:
            raise ValueError("z must be non-negative")

    def render(self) -> str:
        """Table 风格单元格，例如 "<- 0.84"；无差异时为 "= 0.00"。"""
        return f"{self.direction.arrow} {self.z:.2f}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "z": self.z,
            "direction": self.direction.value,
            "n_first_better": self.n_first_better,
            "n_second_better": self.n_second_better,
            "n_ties": self.n_ties,
            "significant": self.significant,
        }


@dataclass
class McNemarMatrix:
    """按列顺序排列的上三角成对比较结果，cells[(i, j)] 仅在 i < j 时存在。"""

    labels: List[str]
    cells: Dict[tuple, McNemarResult] = field(default_factory=dict)

    def get(self, i: int, j: int) -> McNemarResult:
        return self.cells[(i, j)]
