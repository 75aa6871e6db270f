"""
匹配对数据模型。
"""

from dataclasses import dataclass
from typing import Dict, Any


@dataclass(frozen=True, order=True)
class MatchPair:
    """查询描述子与其最近训练描述子的对应关系。"""

    query_idx: int
    train_idx: int
    dist: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "query_idx": self.query_idx,
            "train_idx": self.train_idx,
            "dist": self.dist,
        }
