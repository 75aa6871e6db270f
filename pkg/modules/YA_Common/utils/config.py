"""
配置读取模块

加载 YAML 配置文件（默认工作目录下的 config.yaml，可用环境变量
BENCH_CONFIG 指定其他路径），提供按层级获取配置的接口，
并封装服务器名称、描述、版本等常用字段的读取方法。

配置文件缺失时不报错，所有读取回退到默认值，保证命令行在任意目录下可用。
"""

import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

CONFIG_ENV = "BENCH_CONFIG"
DEFAULT_NAME = "binary-descriptor-bench"
DEFAULT_AUTHOR = "descbench maintainers"


def _default_path() -> Path:
    env_path = os.getenv(CONFIG_ENV)
    if env_path:
        return Path(env_path)
    return Path(os.getcwd()) / "config.yaml"


class Config:
    def __init__(self, path: Optional[Union[str, Path]] = None):
        self._path = Path(path) if path else _default_path()
        self._config: Dict[str, Any] = {}
        self._load()

    @property
    def path(self) -> Path:
        return self._path

    def _load(self) -> None:
        """加载 YAML 配置文件，文件不存在时保持空配置"""
        if not self._path.exists():
            self._config = {}
            return
        with open(self._path, "r", encoding="utf-8") as f:
            self._config = yaml.safe_load(f) or {}

    def reload(self, path: Optional[Union[str, Path]] = None) -> None:
        if path:
            self._path = Path(path)
        self._load()

    def get(self, key: str, default: Any = None) -> Any:
        """按层级取配置，例如 get('benchmark.ransac.max_iters')"""
        parts = key.split(".")
        value: Any = self._config
        try:
            for part in parts:
                value = value[part]
            return value
        except (KeyError, TypeError):
            return default

    def as_dict(self) -> Dict[str, Any]:
        return dict(self._config)

    def get_server_name(self) -> str:
        return self.get("server.name", DEFAULT_NAME)

    def get_server_author(self) -> str:
        return self.get("server.author", DEFAULT_AUTHOR)

    def get_server_description(self) -> str:
        return self.get("server.description", "")

    def get_server_version(self) -> str:
        return self.get("server.version", "0.0.1")


_config = Config()


def load_config(path: Union[str, Path]) -> None:
    """切换到指定的配置文件（命令行 --config 使用）"""
    _config.reload(path)


def get_transport_type() -> str:
    """获取传输层类型"""
    return _config.get("transport.type", "stdio")


def get_server_name() -> str:
    return _config.get_server_name()


def get_server_author() -> str:
    return _config.get_server_author()


def get_server_description() -> str:
    return _config.get_server_description()


def get_server_version() -> str:
    return _config.get_server_version()


def get_config(key: Optional[str] = None, default: Any = None) -> Any:
    """按层级获取配置；不带 key 时返回整个配置字典"""
    if key is None:
        return _config.as_dict()
    return _config.get(key, default)
