from art import text2art
from .config import (
    get_server_name,
    get_server_author,
    get_server_description,
    get_server_version,
)


def print_server_banner(stream=None):
    """
    打印服务 banner：名称（大字）、作者、版本号、描述。

    stdio 传输下 stdout 承载协议数据，banner 应写到 stderr。
    """
    import sys

    out = stream or sys.stderr
    ascii_name = text2art("descbench", font="small")
    print(ascii_name, file=out)
    print(f"Server: {get_server_name()}", file=out)
    print(f"Author: {get_server_author()}", file=out)
    print(f"Version: {get_server_version()}", file=out)
    print(f"{get_server_description()}", file=out)
    print("=" * 60, file=out)
