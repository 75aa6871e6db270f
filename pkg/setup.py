"""应用初始化模块 - 创建和管理 BenchmarkCore 单例"""
from pathlib import Path
from typing import Optional, Union

from modules.YA_Common.utils.logger import get_logger
from modules.YA_Common.utils.config import load_config

logger = get_logger("setup")

_core = None


def get_core():
    """获取 BenchmarkCore 单例"""
    if _core is None:
        raise RuntimeError("BenchmarkCore 未初始化，请确保 setup() 已被调用")
    return _core


def setup(config_path: Optional[Union[str, Path]] = None):
    """
    读取配置文件中的 benchmark 段并初始化 BenchmarkCore。

    Args:
        config_path: 配置文件路径，默认取 BENCH_CONFIG 环境变量或 ./config.yaml
    """
    global _core
    from core.config_manager import get_config_manager, reset_config_manager
    from core.benchmark_core import BenchmarkCore

    try:
        if config_path is not None:
            load_config(config_path)
        reset_config_manager()
        settings = get_config_manager(config_path).get_settings()
        _core = BenchmarkCore(settings)
        logger.debug("BenchmarkCore 初始化完成")
    except Exception as e:
        logger.error(f"初始化失败: {e}")
        raise
    return _core
