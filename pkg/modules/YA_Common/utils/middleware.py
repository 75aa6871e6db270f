"""
全局异常捕获中间件

在 MCP Server 入口统一捕获工具层异常（MCPException）、领域异常
（core.exceptions.BenchmarkError）以及未处理的异常，
并将其转换为 JSON 格式的错误对象写到 stderr（stdout 被 stdio 传输占用）。
"""

import json
import sys
import traceback
from functools import wraps

from .errors import MCPException, InternalException, from_domain_error
from .logger import get_logger

logger = get_logger(__name__)


def _emit(error: dict) -> None:
    sys.stderr.write(json.dumps(error, ensure_ascii=False) + "\n")
    sys.stderr.flush()


def exception_handler(func):
    """
    捕获异常的装饰器
    - MCPException 直接转换为 JSON 错误输出。
    - BenchmarkError 先转换为带错误码的 ToolException。
    - 未知异常包装成 InternalException。
    """
    from core.exceptions import BenchmarkError

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except MCPException as e:
            logger.error(f"MCPException: {e.code} - {e.message} | details={e.details}")
            _emit(e.to_error().to_dict())
        except BenchmarkError as e:
            ex = from_domain_error(e)
            logger.error(f"{ex.code}: {ex.message}")
            _emit(ex.to_error().to_dict())
        except Exception as e:
            ex = InternalException(str(e), {"traceback": traceback.format_exc()})
            logger.exception("Unhandled exception")
            _emit(ex.to_error().to_dict())

    return wrapper
