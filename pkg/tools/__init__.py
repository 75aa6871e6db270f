"""
MCP 工具注册表

工具函数用 @bench_tool 标记后先登记在模块级列表中，
server 启动时由 register_tools() 统一挂载到 FastMCP。
"""

import importlib
from dataclasses import dataclass
from typing import Callable, List, Optional

from mcp.server.fastmcp import FastMCP
from mcp.types import ToolAnnotations

from modules.YA_Common.utils.logger import get_logger

logger = get_logger(__name__)

TOOL_MODULES = ("tools.benchmark_tools",)


@dataclass(frozen=True)
class ToolSpec:
    func: Callable
    name: str
    title: str
    description: str
    read_only: bool = False

    def annotations(self) -> ToolAnnotations:
        return ToolAnnotations(title=self.title, readOnlyHint=self.read_only)


_REGISTRY: List[ToolSpec] = []


def bench_tool(
    name: str,
    title: str,
    description: str,
    read_only: bool = False,
    enable: bool = True,
):
    """登记一个工具函数；同名工具只保留第一次登记。"""

    def decorator(func: Callable) -> Callable:
        if enable and all(spec.name != name for spec in _REGISTRY):
            _REGISTRY.append(ToolSpec(func, name, title, description, read_only))
        return func

    return decorator


def registered_tools() -> List[ToolSpec]:
    for module in TOOL_MODULES:
        importlib.import_module(module)
    return list(_REGISTRY)


def register_tools(app: FastMCP, only: Optional[List[str]] = None) -> int:
    """挂载已登记的工具，返回挂载数量。only 非空时只挂载列出的工具名。"""
    count = 0
    for spec in registered_tools():
        if only and spec.name not in only:
            continue
        app.tool(
            name=spec.name,
            title=spec.title,
            description=spec.description,
            annotations=spec.annotations(),
        )(spec.func)
        count += 1
    logger.info(f"Registered {count} benchmark tools")
    return count
