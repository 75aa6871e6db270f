"""
二进制 PGM (P5) 读写。

头部格式：magic "P5"、宽、高、maxval 以空白分隔，maxval 后恰好一个空白字符，
随后是 width * height 个原始字节。头部允许以 '#' 开头的注释行。
"""

from pathlib import Path
from typing import Tuple, Union

import numpy as np

from core.exceptions import FormatError
from core.models.gray_image import GrayImage

_WHITESPACE = b" \t\r\n\v\f"


def _next_token(data: bytes, pos: int) -> Tuple[bytes, int]:
    """跳过空白与注释，返回下一个头部字段及其后的位置。"""
    n = len(data)
    while pos < n:
        ch = data[pos : pos + 1]
        if ch in _WHITESPACE and ch:
            pos += 1
        elif ch == b"#":
            end = data.find(b"\n", pos)
            pos = n if end < 0 else end + 1
        else:
            break
    start = pos
    while pos < n and data[pos : pos + 1] not in _WHITESPACE:
        pos += 1
    if start == pos:
        raise FormatError("Truncated PGM header")
    return data[start:pos], pos


def _header_int(token: bytes, name: str) -> int:
    try:
        value = int(token.decode("ascii"))
    except (UnicodeDecodeError, ValueError):
        raise FormatError(f"Invalid PGM {name}: {token!r}")
    return value


def read_pgm(data: bytes) -> GrayImage:
    data = bytes(data)
    if data[:2] != b"P5":
        raise FormatError(f"Unsupported PGM magic {data[:2]!r}; only binary P5 is accepted")
    magic, pos = _next_token(data, 0)
    if magic != b"P5":
        raise FormatError(f"Unsupported PGM magic {magic!r}")
    width_tok, pos = _next_token(data, pos)
    height_tok, pos = _next_token(data, pos)
    maxval_tok, pos = _next_token(data, pos)
    width = _header_int(width_tok, "width")
    height = _header_int(height_tok, "height")
    maxval = _header_int(maxval_tok, "maxval")
    if width < 1 or height < 1:
        raise FormatError(f"Invalid PGM size {width}x{height}")
    if not 1 <= maxval <= 255:
        raise FormatError(f"PGM maxval {maxval} not supported (must be 1..255)")
    if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
        raise FormatError("PGM header must end with a single whitespace character")
    pos += 1

    count = width * height
    raster = data[pos : pos + count]
    if len(raster) < count:
        raise FormatError(f"Truncated PGM raster: expected {count} bytes, got {len(raster)}")
    pixels = np.frombuffer(raster, dtype=np.uint8).reshape(height, width)
    return GrayImage(width, height, pixels)


def write_pgm(img: GrayImage) -> bytes:
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes()


def load_pgm(path: Union[str, Path]) -> GrayImage:
    return read_pgm(Path(path).read_bytes())


def save_pgm(path: Union[str, Path], img: GrayImage) -> None:
    Path(path).write_bytes(write_pgm(img))
