"""
BDSC 描述子文件（小端）：

    magic "BDSC" | version u16 = 1 | name_len u16 | name (UTF-8)
    count u32 | desc_bytes u16
    count 条记录 { x f32, y f32, score f32, descriptor[desc_bytes] }
"""

import struct
from pathlib import Path
from typing import Union

import numpy as np

from core.exceptions import FormatError
from core.models.binary_descriptor import BinaryDescriptor
from core.models.keypoint import DescriptorSet, Keypoint

MAGIC = b"BDSC"
VERSION = 1
MAX_DESC_BYTES = 512


def _record_dtype(desc_bytes: int) -> np.dtype:
    return np.dtype(
        [("x", "<f4"), ("y", "<f4"), ("score", "<f4"), ("desc", "u1", (desc_bytes,))]
    )


def write_descriptor_file(dset: DescriptorSet) -> bytes:
    name = dset.descriptor_name.encode("utf-8")
    if len(name) > 0xFFFF:
        raise FormatError("Descriptor name too long for BDSC header")
    desc_bytes = (dset.n_bits + 7) // 8
    header = MAGIC + struct.pack("<HH", VERSION, len(name)) + name
    header += struct.pack("<IH", len(dset), desc_bytes)
    records = np.zeros(len(dset), dtype=_record_dtype(desc_bytes))
    for i, (kp, desc) in enumerate(zip(dset.keypoints, dset.descriptors)):
        records[i] = (kp.x, kp.y, kp.score, np.frombuffer(desc.bits, dtype=np.uint8))
    return header + records.tobytes()


def read_descriptor_file(data: bytes) -> DescriptorSet:
    """解析 BDSC 字节流；魔数、版本、截断或多余字节都会抛出 FormatError。"""
    pos = 0

    def take(n: int) -> bytes:
        nonlocal pos
        if pos + n > len(data):
            raise FormatError(f"Truncated BDSC stream at offset {pos}")
        chunk = data[pos:pos + n]
        pos += n
        return chunk

    if take(4) != MAGIC:
        raise FormatError("Bad BDSC magic")
    version, name_len = struct.unpack("<HH", take(4))
    if version != VERSION:
        raise FormatError(f"Unsupported BDSC version {version}")
    try:
        name = take(name_len).decode("utf-8")
    except UnicodeDecodeError as e:
        raise FormatError(f"Descriptor name is not UTF-8: {e}") from e
    count, desc_bytes = struct.unpack("<IH", take(6))
    if count and not 1 <= desc_bytes <= MAX_DESC_BYTES:
        raise FormatError(f"Invalid descriptor byte length {desc_bytes}")

    dtype = _record_dtype(desc_bytes)
    expected = count * dtype.itemsize
    remaining = len(data) - pos
    if remaining < expected:
        raise FormatError(
            f"Truncated BDSC stream: {count} records need {expected} bytes, {remaining} present"
        )
    if remaining > expected:
        raise FormatError(f"{remaining - expected} trailing bytes after {count} records")

    records = np.frombuffer(data, dtype=dtype, count=count, offset=pos)
    keypoints = [
        Keypoint(x=float(r["x"]), y=float(r["y"]), score=float(r["score"])) for r in records
    ]
    descriptors = [
        BinaryDescriptor(r["desc"].tobytes(), 8 * desc_bytes) for r in records
    ]
    return DescriptorSet(keypoints=keypoints, descriptors=descriptors, descriptor_name=name)


def load_descriptor_file(path: Union[str, Path]) -> DescriptorSet:
    return read_descriptor_file(Path(path).read_bytes())


def save_descriptor_file(dset: DescriptorSet, path: Union[str, Path]) -> None:
    Path(path).write_bytes(write_descriptor_file(dset))
