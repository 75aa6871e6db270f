"""
性能监控和错误跟踪模块

记录基准运行各阶段（提取、匹配、RANSAC、残差）的耗时与失败次数，
提供装饰器和上下文管理器。子进程中的计时通过 snapshot/merge 汇总回主进程。
"""

import threading
import time
from contextlib import contextmanager
from datetime import datetime
from functools import wraps
from typing import Any, Callable, Dict, Optional

from modules.YA_Common.utils.logger import get_logger


def _empty_stage() -> Dict[str, Any]:
    return {
        "count": 0,
        "total_duration": 0.0,
        "min_duration": float("inf"),
        "max_duration": 0.0,
        "error_count": 0,
    }


class PerformanceMonitor:
    """性能监控器

    按阶段名累计调用次数、耗时与失败次数。
    """

    def __init__(self):
        self.metrics: Dict[str, Dict[str, Any]] = {}
        self._lock = threading.Lock()
        self.logger = get_logger("core.monitoring.performance")

    def record_operation(self, operation: str, duration: float, success: bool = True) -> None:
        """记录一次操作

        Args:
            operation: 阶段名称
            duration: 执行时间（秒）
            success: 是否成功
        """
        with self._lock:
            stage = self.metrics.setdefault(operation, _empty_stage())
            stage["count"] += 1
            stage["total_duration"] += duration
            stage["min_duration"] = min(stage["min_duration"], duration)
            stage["max_duration"] = max(stage["max_duration"], duration)
            if not success:
                stage["error_count"] += 1

    def snapshot(self) -> Dict[str, Dict[str, Any]]:
        """可序列化的原始计数，供跨进程合并"""
        with self._lock:
            return {op: dict(stage) for op, stage in self.metrics.items()}

    def merge(self, other: Dict[str, Dict[str, Any]]) -> None:
        """把另一个监控器的 snapshot 合并进来"""
        with self._lock:
            for op, incoming in other.items():
                stage = self.metrics.setdefault(op, _empty_stage())
                stage["count"] += incoming["count"]
                stage["total_duration"] += incoming["total_duration"]
                stage["min_duration"] = min(stage["min_duration"], incoming["min_duration"])
                stage["max_duration"] = max(stage["max_duration"], incoming["max_duration"])
                stage["error_count"] += incoming["error_count"]

    def get_metrics(self, operation: Optional[str] = None) -> Dict[str, Any]:
        """获取性能指标，附带平均耗时"""
        result = {}
        for op, stage in self.snapshot().items():
            if operation and op != operation:
                continue
            if stage["count"] > 0:
                stage["avg_duration"] = stage["total_duration"] / stage["count"]
            result[op] = stage
        return result

    def reset_metrics(self, operation: Optional[str] = None) -> None:
        with self._lock:
            if operation:
                self.metrics.pop(operation, None)
            else:
                self.metrics.clear()

    def log_metrics(self) -> None:
        """记录各阶段耗时摘要到日志"""
        metrics = self.get_metrics()
        if not metrics:
            self.logger.info("No stage timings recorded")
            return
        for op, stage in sorted(metrics.items()):
            self.logger.info(
                f"Stage {op}: {stage['count']} calls, total {stage['total_duration']:.3f}s, "
                f"avg {stage.get('avg_duration', 0.0):.4f}s, "
                f"max {stage['max_duration']:.4f}s, failures {stage['error_count']}"
            )


class ErrorTracker:
    """错误跟踪器

    统计被记录为非 ok 状态的失败（不会中断运行的那些）。
    """

    def __init__(self):
        self.errors: list[Dict[str, Any]] = []
        self.error_counts: Dict[str, int] = {}
        self.logger = get_logger("core.monitoring.errors")

    def track_error(self, error: Exception, context: Optional[Dict[str, Any]] = None) -> None:
        self.record(type(error).__name__, str(error), context)

    def record(
        self, error_type: str, message: str = "", context: Optional[Dict[str, Any]] = None
    ) -> None:
        """按类型名记录一次失败（子进程回传的失败只有类型名与位置）"""
        self.errors.append(
            {
                "timestamp": datetime.now().isoformat(),
                "type": error_type,
                "message": message,
                "context": context or {},
            }
        )
        self.error_counts[error_type] = self.error_counts.get(error_type, 0) + 1
        self.logger.debug(f"Error tracked: {error_type}: {message} {context or ''}")

    def get_error_summary(self) -> Dict[str, Any]:
        return {
            "total_errors": len(self.errors),
            "error_counts": self.error_counts.copy(),
            "recent_errors": self.errors[-10:],
        }

    def clear_errors(self) -> None:
        self.errors.clear()
        self.error_counts.clear()

    def log_error_summary(self) -> None:
        summary = self.get_error_summary()
        if not summary["total_errors"]:
            return
        counts = ", ".join(f"{k}={v}" for k, v in sorted(summary["error_counts"].items()))
        self.logger.warning(f"{summary['total_errors']} recorded failures ({counts})")


# 全局监控实例
_performance_monitor: Optional[PerformanceMonitor] = None
_error_tracker: Optional[ErrorTracker] = None


def get_performance_monitor() -> PerformanceMonitor:
    """获取全局性能监控器实例"""
    global _performance_monitor
    if _performance_monitor is None:
        _performance_monitor = PerformanceMonitor()
    return _performance_monitor


def get_error_tracker() -> ErrorTracker:
    """获取全局错误跟踪器实例"""
    global _error_tracker
    if _error_tracker is None:
        _error_tracker = ErrorTracker()
    return _error_tracker


def monitor_performance(operation_name: Optional[str] = None):
    """性能监控装饰器

    Args:
        operation_name: 阶段名称，为 None 时使用函数名
    """
    def decorator(func: Callable) -> Callable:
        op_name = operation_name or func.__name__

        @wraps(func)
        def wrapper(*args, **kwargs):
            with performance_context(op_name):
                return func(*args, **kwargs)

        return wrapper
    return decorator


def track_errors(context: Optional[Dict[str, Any]] = None):
    """错误跟踪装饰器：记录异常后继续抛出"""
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except Exception as e:
                error_context = dict(context or {})
                error_context["function"] = func.__name__
                get_error_tracker().track_error(e, error_context)
                raise

        return wrapper
    return decorator


@contextmanager
def performance_context(operation_name: str, monitor: Optional[PerformanceMonitor] = None):
    """性能监控上下文管理器

    Args:
        operation_name: 阶段名称
        monitor: 目标监控器，默认全局实例
    """
    monitor = monitor or get_performance_monitor()
    start_time = time.perf_counter()
    success = True
    try:
        yield
    except Exception:
        success = False
        raise
    finally:
        monitor.record_operation(operation_name, time.perf_counter() - start_time, success)
