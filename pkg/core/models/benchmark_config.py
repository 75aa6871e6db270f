"""
基准运行配置数据模型。
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple, Union

from core.exceptions import ParameterError
from core.models.homography import RansacParams
from core.models.metric import MetricId

SUPPORTED_BRIEF_BITS = (128, 256, 512)


@dataclass(frozen=True)
class PairSpec:
    """图像对清单中的一行；desc_a/desc_b 仅在文件描述子模式下使用。"""

    pair_id: str
    image1: Path
    image2: Path
    truth_h: Optional[Path] = None
    desc_a: Optional[Path] = None
    desc_b: Optional[Path] = None


@dataclass(frozen=True)
class BuiltinDescriptorSource:
    """内置 FAST + BRIEF 提取；n_bits 可列出多个宽度，共享同一组关键点。"""

    n_bits: Tuple[int, ...] = (256,)
    pattern_seed: int = 24301
    fast_threshold: int = 20
    target_n: int = 5000

    def __post_init__(self):
        if not self.n_bits:
            raise ParameterError("At least one descriptor width is required")
        for bits in self.n_bits:
            if bits not in SUPPORTED_BRIEF_BITS:
                raise ParameterError(f"Unsupported BRIEF width {bits}; use one of {SUPPORTED_BRIEF_BITS}")
        if self.fast_threshold < 1:
            raise ParameterError("fast_threshold must be at least 1")
        if self.target_n < 1:
            raise ParameterError("target_n must be at least 1")


@dataclass(frozen=True)
class FileDescriptorSource:
    """从每个图像对的 BDSC 文件读取外部描述子。"""


DescriptorSource = Union[BuiltinDescriptorSource, FileDescriptorSource]


@dataclass
class BenchmarkConfig:
    """一次基准运行的全部输入。"""

    pair_list: List[PairSpec]
    output_dir: Path
    descriptor_source: DescriptorSource = field(default_factory=BuiltinDescriptorSource)
    metrics: List[MetricId] = field(default_factory=lambda: list(MetricId))
    ransac: RansacParams = field(default_factory=RansacParams)
    nonzero_threshold: int = 0
    min_overlap_fraction: float = 0.01
    cross_check: bool = False
    master_seed: int = 0
    workers: int = 1
    match_workers: int = 1
    chunk_size: int = 256
    dump_debug: bool = False

    def __post_init__(self):
        if not self.pair_list:
            raise ParameterError("pair_list must not be empty")
        if not self.metrics:
            raise ParameterError("metrics must not be empty")
        if len(set(self.metrics)) != len(self.metrics):
            raise ParameterError("metrics must be duplicate-free")
        ids = [p.pair_id for p in self.pair_list]
        if len(set(ids)) != len(ids):
            raise ParameterError("pair_id values must be unique")
        if self.nonzero_threshold < 0:
            raise ParameterError("nonzero_threshold must be non-negative")
        if not 0.0 <= self.min_overlap_fraction <= 1.0:
            raise ParameterError("min_overlap_fraction must be in [0, 1]")
        if not 0 <= self.master_seed < 2**64:
            raise ParameterError("master_seed must be an unsigned 64-bit integer")
        if self.workers < 1 or self.match_workers < 1:
            raise ParameterError("worker counts must be at least 1")
        self.output_dir = Path(self.output_dir)

    @property
    def uses_builtin(self) -> bool:
        return isinstance(self.descriptor_source, BuiltinDescriptorSource)
