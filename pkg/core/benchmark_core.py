"""
基准评测核心：把配置文件中的设置与调用方参数合并，
为命令行与 MCP 工具提供统一入口。
"""

from pathlib import Path
from typing import List, Optional, Sequence, Union

from core.benchmark.pair_list import read_pair_list
from core.benchmark.report import ReportBundle, report_from_csv
from core.benchmark.runner import BenchmarkRun, run_benchmark
from core.benchmark.synth import synth_dataset
from core.config_manager import BenchmarkSettings
from core.exceptions import ParameterError
from core.features.descriptor_file import load_descriptor_file
from core.matching.brute_force_matcher import brute_force_match
from core.models.benchmark_config import (
    BenchmarkConfig,
    BuiltinDescriptorSource,
    FileDescriptorSource,
    PairSpec,
)
from core.models.homography import RansacParams
from core.models.match_pair import MatchPair
from core.models.metric import MetricId
from core.monitoring import (
    get_error_tracker,
    get_performance_monitor,
    monitor_performance,
    track_errors,
)
from modules.YA_Common.utils.logger import get_logger

PathLike = Union[str, Path]
DESCRIPTOR_MODES = ("builtin", "files")


class BenchmarkCore:
    """
    二进制描述子度量基准的统一入口。

    所有参数为 None 时取配置文件（BenchmarkSettings）中的值。
    """

    def __init__(self, settings: Optional[BenchmarkSettings] = None):
        self.logger = get_logger(__name__)
        self.settings = settings or BenchmarkSettings()

    def make_config(
        self,
        pairs: PathLike,
        out_dir: PathLike,
        desc: str = "builtin",
        metrics: Optional[Sequence[MetricId]] = None,
        n_bits: Optional[Sequence[int]] = None,
        target_n: Optional[int] = None,
        ransac_thresh: Optional[float] = None,
        seed: Optional[int] = None,
        cross_check: Optional[bool] = None,
        workers: Optional[int] = None,
        dump_debug: Optional[bool] = None,
    ) -> BenchmarkConfig:
        """由图像对清单与覆盖参数构造 BenchmarkConfig。"""
        s = self.settings
        if desc not in DESCRIPTOR_MODES:
            raise ParameterError(f"Descriptor source must be one of {DESCRIPTOR_MODES}, got '{desc}'")
        if desc == "builtin":
            source = BuiltinDescriptorSource(
                n_bits=tuple(n_bits or s.features.n_bits),
                pattern_seed=s.features.pattern_seed,
                fast_threshold=s.features.fast_threshold,
                target_n=target_n if target_n is not None else s.features.target_n,
            )
        else:
            source = FileDescriptorSource()

        pair_list: List[PairSpec] = read_pair_list(pairs)
        return BenchmarkConfig(
            pair_list=pair_list,
            output_dir=Path(out_dir),
            descriptor_source=source,
            metrics=list(metrics) if metrics else s.metric_ids(),
            ransac=RansacParams(
                reproj_threshold=ransac_thresh if ransac_thresh is not None else s.ransac.reproj_threshold,
                max_iters=s.ransac.max_iters,
                confidence=s.ransac.confidence,
            ),
            nonzero_threshold=s.imaging.nonzero_threshold,
            min_overlap_fraction=s.imaging.min_overlap_fraction,
            cross_check=s.matching.cross_check if cross_check is None else cross_check,
            master_seed=s.run.master_seed if seed is None else seed,
            workers=workers or s.run.workers,
            match_workers=s.matching.workers,
            chunk_size=s.matching.chunk_size,
            dump_debug=s.run.dump_debug if dump_debug is None else dump_debug,
        )

    @monitor_performance("bench")
    @track_errors({"command": "bench"})
    def bench(self, config: BenchmarkConfig) -> BenchmarkRun:
        get_performance_monitor().reset_metrics()
        get_error_tracker().clear_errors()
        return run_benchmark(config)

    @monitor_performance("report")
    @track_errors({"command": "report"})
    def report(
        self, scores: PathLike, out_dir: PathLike, value: str = "log_score"
    ) -> ReportBundle:
        return report_from_csv(
            scores,
            out_dir,
            alpha=self.settings.stats.alpha,
            z_threshold=self.settings.stats.z_threshold,
            value=value,
        )

    @monitor_performance("synth")
    @track_errors({"command": "synth"})
    def synth(
        self,
        out_dir: PathLike,
        seed: Optional[int] = None,
        n_pairs: Optional[int] = None,
        image_size: Optional[int] = None,
        self_pair: Optional[bool] = None,
    ) -> List[PairSpec]:
        s = self.settings.synth
        return synth_dataset(
            out_dir,
            seed=s.seed if seed is None else seed,
            n_pairs=n_pairs or s.n_pairs,
            image_size=image_size or s.image_size,
            self_pair=s.self_pair if self_pair is None else self_pair,
        )

    @monitor_performance("match_files")
    @track_errors({"command": "match"})
    def match(
        self,
        desc_a: PathLike,
        desc_b: PathLike,
        metric: MetricId,
        cross_check: Optional[bool] = None,
    ) -> List[MatchPair]:
        """读取两个 BDSC 文件并做暴力匹配。"""
        set_a = load_descriptor_file(desc_a)
        set_b = load_descriptor_file(desc_b)
        return brute_force_match(
            set_a.descriptors,
            set_b.descriptors,
            metric,
            cross_check=self.settings.matching.cross_check if cross_check is None else cross_check,
            workers=self.settings.matching.workers,
            chunk_size=self.settings.matching.chunk_size,
        )
