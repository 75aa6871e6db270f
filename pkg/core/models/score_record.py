"""
基准评测记录数据模型。
"""

from dataclasses import dataclass, fields
from enum import Enum
from typing import Dict, Any, List, Optional

from core.exceptions import FormatError, ParameterError
from core.models.metric import MetricId


class ScoreStatus(Enum):
    """单条记录的处理状态。"""

    OK = "ok"
    RANSAC_FAILED = "ransac_failed"
    DEGENERATE_OVERLAP = "degenerate_overlap"
    INPUT_ERROR = "input_error"


@dataclass(frozen=True)
class ScoreRecord:
    """
    一个评测样本：(图像对, 描述子类型, 度量) 的匹配、RANSAC 与残差结果。

    状态非 ok 时，未能计算的数值字段为 None；CSV 列顺序即字段顺序。
    """

    pair_id: str
    descriptor_name: str
    metric: MetricId
    match_count: Optional[int] = None
    inlier_count: Optional[int] = None
    nonzero_count: Optional[int] = None
    raw_sum: Optional[int] = None
    overlap_pixels: Optional[int] = None
    log_score: Optional[float] = None
    status: ScoreStatus = ScoreStatus.OK
    corner_error: Optional[float] = None

    @property
    def ok(self) -> bool:
        return self.status is ScoreStatus.OK

    def sort_key(self, descriptor_order: Dict[str, int]) -> tuple:
        return (self.pair_id, descriptor_order.get(self.descriptor_name, 0), self.metric.ordinal)

    def to_row(self) -> List[str]:
        values = []
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None:
                values.append("")
            elif isinstance(value, Enum):
                values.append(value.value)
            elif isinstance(value, float):
                values.append(repr(value))
            else:
                values.append(str(value))
        return values

    @classmethod
    def from_row(cls, row: Dict[str, str]) -> "ScoreRecord":
        try:
            return cls(
                pair_id=row["pair_id"],
                descriptor_name=row["descriptor_name"],
                metric=MetricId.parse(row["metric"]),
                match_count=_opt_int(row.get("match_count")),
                inlier_count=_opt_int(row.get("inlier_count")),
                nonzero_count=_opt_int(row.get("nonzero_count")),
                raw_sum=_opt_int(row.get("raw_sum")),
                overlap_pixels=_opt_int(row.get("overlap_pixels")),
                log_score=_opt_float(row.get("log_score")),
                status=ScoreStatus(row.get("status") or "ok"),
                corner_error=_opt_float(row.get("corner_error")),
            )
        except (KeyError, ValueError, ParameterError) as e:
            raise FormatError(f"Malformed score row {row!r}: {e}")


SCORE_COLUMNS = [f.name for f in fields(ScoreRecord)]


def _opt_int(text: Optional[str]) -> Optional[int]:
    return int(text) if text not in (None, "") else None


def _opt_float(text: Optional[str]) -> Optional[float]:
    return float(text) if text not in (None, "") else None
