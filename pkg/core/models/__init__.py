"""
基准评测数据模型。
"""

from .binary_descriptor import BinaryDescriptor, ContingencyCounts
from .metric import MetricId
from .match_pair import MatchPair
from .homography import Homography, PointCorrespondence, RansacParams
from .gray_image import GrayImage, ResidualScore
from .keypoint import Keypoint, DescriptorSet, SamplingPattern
from .statistics import (
    ScoreMatrix,
    AnovaSource,
    AnovaRow,
    AnovaTable,
    McNemarDirection,
    McNemarResult,
    McNemarMatrix,
)
from .score_record import ScoreRecord, ScoreStatus, SCORE_COLUMNS
from .benchmark_config import (
    BenchmarkConfig,
    PairSpec,
    BuiltinDescriptorSource,
    FileDescriptorSource,
)

__all__ = [
    "BinaryDescriptor",
    "ContingencyCounts",
    "MetricId",
    "MatchPair",
    "Homography",
    "PointCorrespondence",
    "RansacParams",
    "GrayImage",
    "ResidualScore",
    "Keypoint",
    "DescriptorSet",
    "SamplingPattern",
    "ScoreMatrix",
    "AnovaSource",
    "AnovaRow",
    "AnovaTable",
    "McNemarDirection",
    "McNemarResult",
    "McNemarMatrix",
    "ScoreRecord",
    "ScoreStatus",
    "SCORE_COLUMNS",
    "BenchmarkConfig",
    "PairSpec",
    "BuiltinDescriptorSource",
    "FileDescriptorSource",
]
