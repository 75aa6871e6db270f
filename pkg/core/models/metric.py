"""
距离度量标识。
"""

from enum import Enum

from core.exceptions import ParameterError


class MetricId(Enum):
    """五种距离度量；枚举顺序固定，同时用作表格列序。"""

    HAMMING = "hamming"
    JACCARD = "jaccard"
    CORRELATION = "correlation"
    DICE = "dice"
    YULE = "yule"

    @property
    def ordinal(self) -> int:
        return _ORDER.index(self)

    @property
    def label(self) -> str:
        return _LABELS[self]

    @classmethod
    def parse(cls, name: str) -> "MetricId":
        key = name.strip().lower()
        key = _ALIASES.get(key, key)
        try:
            return cls(key)
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ParameterError(f"Unknown metric '{name}' (expected one of: {valid})")

    @classmethod
    def parse_list(cls, text: str) -> list:
        """解析逗号分隔的度量列表，拒绝重复项。"""
        metrics = [cls.parse(part) for part in text.split(",") if part.strip()]
        if not metrics:
            raise ParameterError("Metric list must not be empty")
        if len(set(metrics)) != len(metrics):
            raise ParameterError(f"Duplicate metric in '{text}'")
        return metrics


_ORDER = list(MetricId)

_LABELS = {
    MetricId.HAMMING: "Hamming",
    MetricId.JACCARD: "Jaccard-Needham",
    MetricId.CORRELATION: "Correlation",
    MetricId.DICE: "Dice",
    MetricId.YULE: "Yule",
}

_ALIASES = {
    "jaccard-needham": "jaccard",
    "jaccard_needham": "jaccard",
}
