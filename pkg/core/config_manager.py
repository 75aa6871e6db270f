"""
配置管理系统

把配置文件中的 benchmark 段映射为带类型的设置对象，支持 YAML/JSON，
提供校验、序列化与默认值管理。命令行参数在此基础上覆盖。
"""

import json
import os
from dataclasses import dataclass, field, fields, asdict
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import yaml

from core.exceptions import ConfigurationError, ParameterError
from core.models.metric import MetricId

SUPPORTED_BRIEF_BITS = (128, 256, 512)
CONFIG_ENV = "BENCH_CONFIG"


@dataclass
class FeatureSettings:
    """内置特征提取配置"""
    n_bits: List[int] = field(default_factory=lambda: [256])
    pattern_seed: int = 24301
    fast_threshold: int = 20
    target_n: int = 5000


@dataclass
class MatchingSettings:
    """匹配配置"""
    metrics: List[str] = field(default_factory=lambda: [m.value for m in MetricId])
    cross_check: bool = False
    workers: int = 1
    chunk_size: int = 256


@dataclass
class RansacSettings:
    """RANSAC 配置"""
    reproj_threshold: float = 3.0
    max_iters: int = 2000
    confidence: float = 0.995


@dataclass
class ImagingSettings:
    """残差评分配置"""
    nonzero_threshold: int = 0
    min_overlap_fraction: float = 0.01


@dataclass
class StatsSettings:
    """统计检验配置"""
    alpha: float = 0.05
    z_threshold: float = 2.576


@dataclass
class RunSettings:
    """运行配置"""
    master_seed: int = 0
    workers: int = 1
    dump_debug: bool = False


@dataclass
class SynthSettings:
    """合成数据集配置"""
    seed: int = 7
    n_pairs: int = 30
    image_size: int = 256
    self_pair: bool = True


@dataclass
class BenchmarkSettings:
    """基准评测完整配置"""
    features: FeatureSettings = field(default_factory=FeatureSettings)
    matching: MatchingSettings = field(default_factory=MatchingSettings)
    ransac: RansacSettings = field(default_factory=RansacSettings)
    imaging: ImagingSettings = field(default_factory=ImagingSettings)
    stats: StatsSettings = field(default_factory=StatsSettings)
    run: RunSettings = field(default_factory=RunSettings)
    synth: SynthSettings = field(default_factory=SynthSettings)

    def metric_ids(self) -> List[MetricId]:
        return MetricId.parse_list(",".join(str(m) for m in self.matching.metrics))

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


_SECTIONS: Tuple[Tuple[str, type], ...] = (
    ("features", FeatureSettings),
    ("matching", MatchingSettings),
    ("ransac", RansacSettings),
    ("imaging", ImagingSettings),
    ("stats", StatsSettings),
    ("run", RunSettings),
    ("synth", SynthSettings),
)


def _build_section(cls: type, data: Any, name: str):
    if data is None:
        return cls()
    if not isinstance(data, dict):
        raise ConfigurationError(f"benchmark.{name} must be a mapping")
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigurationError(f"Unknown keys in benchmark.{name}: {', '.join(unknown)}")
    return cls(**data)


def settings_from_dict(data: Optional[Dict[str, Any]]) -> BenchmarkSettings:
    """由 benchmark 段的字典构造设置对象（缺失的键取默认值）"""
    data = data or {}
    if not isinstance(data, dict):
        raise ConfigurationError("benchmark section must be a mapping")
    settings = BenchmarkSettings(
        **{name: _build_section(cls, data.get(name), name) for name, cls in _SECTIONS}
    )
    if isinstance(settings.features.n_bits, int):
        settings.features.n_bits = [settings.features.n_bits]
    if isinstance(settings.matching.metrics, str):
        settings.matching.metrics = [m.strip() for m in settings.matching.metrics.split(",")]
    return settings


def validate_settings(settings: BenchmarkSettings) -> List[str]:
    """验证配置有效性，返回错误信息列表"""
    errors = []

    if not settings.features.n_bits:
        errors.append("features.n_bits must list at least one width")
    for bits in settings.features.n_bits:
        if bits not in SUPPORTED_BRIEF_BITS:
            errors.append(f"features.n_bits entry {bits} must be one of {SUPPORTED_BRIEF_BITS}")
    if settings.features.fast_threshold < 1:
        errors.append("features.fast_threshold must be at least 1")
    if settings.features.target_n < 1:
        errors.append("features.target_n must be positive")

    try:
        settings.metric_ids()
    except ParameterError as e:
        errors.append(f"matching.metrics: {e}")
    if settings.matching.workers < 1:
        errors.append("matching.workers must be at least 1")
    if settings.matching.chunk_size < 1:
        errors.append("matching.chunk_size must be at least 1")

    if settings.ransac.reproj_threshold <= 0:
        errors.append("ransac.reproj_threshold must be positive")
    if settings.ransac.max_iters < 1:
        errors.append("ransac.max_iters must be at least 1")
    if not 0 < settings.ransac.confidence < 1:
        errors.append("ransac.confidence must be between 0 and 1")

    if settings.imaging.nonzero_threshold < 0:
        errors.append("imaging.nonzero_threshold must be non-negative")
    if not 0 <= settings.imaging.min_overlap_fraction <= 1:
        errors.append("imaging.min_overlap_fraction must be between 0 and 1")

    if not 0 < settings.stats.alpha < 1:
        errors.append("stats.alpha must be between 0 and 1")
    if settings.stats.z_threshold < 0:
        errors.append("stats.z_threshold must be non-negative")

    if not 0 <= settings.run.master_seed < 2**64:
        errors.append("run.master_seed must be an unsigned 64-bit integer")
    if settings.run.workers < 1:
        errors.append("run.workers must be at least 1")

    if settings.synth.n_pairs < 1:
        errors.append("synth.n_pairs must be at least 1")
    if settings.synth.image_size < 64:
        errors.append("synth.image_size must be at least 64")

    return errors


class ConfigManager:
    """配置管理器

    从 YAML 或 JSON 文件的 benchmark 段加载设置；文件不存在时使用默认值。
    """

    def __init__(self, config_path: Optional[Union[str, Path]] = None):
        """初始化配置管理器

        Args:
            config_path: 配置文件路径，支持.yaml, .yml, .json格式
        """
        self.config_path = Path(config_path or os.getenv(CONFIG_ENV, "config.yaml"))
        self._settings = BenchmarkSettings()

        if self.config_path.exists():
            self.load()

    def load(self, config_path: Optional[Union[str, Path]] = None) -> None:
        """加载配置文件"""
        if config_path:
            self.config_path = Path(config_path)

        if not self.config_path.exists():
            raise ConfigurationError(f"Configuration file not found: {self.config_path}")

        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                if self.config_path.suffix in [".yaml", ".yml"]:
                    data = yaml.safe_load(f)
                elif self.config_path.suffix == ".json":
                    data = json.load(f)
                else:
                    raise ConfigurationError(f"Unsupported config format: {self.config_path.suffix}")
        except (yaml.YAMLError, json.JSONDecodeError) as e:
            raise ConfigurationError(f"Failed to parse configuration file: {e}")

        try:
            settings = settings_from_dict((data or {}).get("benchmark"))
        except TypeError as e:
            raise ConfigurationError(f"Invalid benchmark settings: {e}")
        errors = validate_settings(settings)
        if errors:
            raise ConfigurationError("; ".join(errors))
        self._settings = settings

    def save(self, config_path: Optional[Union[str, Path]] = None) -> None:
        """保存配置到文件（仅 benchmark 段）"""
        if config_path:
            self.config_path = Path(config_path)

        data = {"benchmark": self._settings.to_dict()}
        with open(self.config_path, "w", encoding="utf-8") as f:
            if self.config_path.suffix in [".yaml", ".yml"]:
                yaml.safe_dump(data, f, default_flow_style=False, allow_unicode=True)
            elif self.config_path.suffix == ".json":
                json.dump(data, f, indent=2, ensure_ascii=False)
            else:
                raise ConfigurationError(f"Unsupported config format: {self.config_path.suffix}")

    def get_settings(self) -> BenchmarkSettings:
        """获取完整配置"""
        return self._settings


# 全局配置管理器实例
_config_manager: Optional[ConfigManager] = None


def get_config_manager(config_path: Optional[Union[str, Path]] = None) -> ConfigManager:
    """获取全局配置管理器实例

    Args:
        config_path: 配置文件路径，仅在首次调用时有效
    """
    global _config_manager
    if _config_manager is None:
        _config_manager = ConfigManager(config_path)
    return _config_manager


def reset_config_manager() -> None:
    """重置全局配置管理器（主要用于测试）"""
    global _config_manager
    _config_manager = None
