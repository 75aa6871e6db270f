"""
Core binary descriptor metric benchmark implementation.
"""

from core.benchmark_core import BenchmarkCore
from core.exceptions import (
    BenchmarkError,
    ParameterError,
    FormatError,
    GeometryError,
    ReportError,
)
from core.config_manager import ConfigManager, get_config_manager
from core.monitoring import (
    monitor_performance,
    track_errors,
    performance_context,
    get_performance_monitor,
    get_error_tracker
)

__all__ = [
    "BenchmarkCore",
    "BenchmarkError",
    "ParameterError",
    "FormatError",
    "GeometryError",
    "ReportError",
    "ConfigManager",
    "get_config_manager",
    "monitor_performance",
    "track_errors",
    "performance_context",
    "get_performance_monitor",
    "get_error_tracker",
]
