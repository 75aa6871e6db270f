"""
列联计数：用按位运算与 popcount 计算 f00、f01、f10、f11。

非字节对齐的位宽依赖填充位为零：f11、f10、f01 中至少一个操作数在
填充位上为 0，因此不会被计入；f00 由减法得到，不对 NOT a 做尾部掩码。
"""

from typing import Sequence, Tuple

import numpy as np

from core.exceptions import DescriptorLengthError
from core.models.binary_descriptor import BinaryDescriptor, ContingencyCounts


def _as_array(descriptor: BinaryDescriptor) -> np.ndarray:
    return np.frombuffer(descriptor.bits, dtype=np.uint8)


def popcount_bytes(data: bytes) -> int:
    """字节序列中置位的个数。"""
    arr = np.frombuffer(bytes(data), dtype=np.uint8)
    return int(np.bitwise_count(arr).sum(dtype=np.int64))


def contingency(a: BinaryDescriptor, b: BinaryDescriptor) -> ContingencyCounts:
    if a.n_bits != b.n_bits:
        raise DescriptorLengthError(f"Descriptor widths differ: {a.n_bits} vs {b.n_bits}")
    x = _as_array(a)
    y = _as_array(b)
    f11 = int(np.bitwise_count(x & y).sum(dtype=np.int64))
    f10 = int(np.bitwise_count(x & ~y).sum(dtype=np.int64))
    f01 = int(np.bitwise_count(~x & y).sum(dtype=np.int64))
    f00 = a.n_bits - f11 - f10 - f01
    return ContingencyCounts(f00=f00, f01=f01, f10=f10, f11=f11, n_bits=a.n_bits)


def pack_descriptors(descriptors: Sequence[BinaryDescriptor]) -> Tuple[np.ndarray, int]:
    """
    把描述子列表堆叠为 (N, W) 的 uint64 字矩阵，每行按 8 字节补零。

    Returns:
        (words, n_bits)
    """
    if not descriptors:
        return np.zeros((0, 0), dtype=np.uint64), 0
    n_bits = descriptors[0].n_bits
    for d in descriptors:
        if d.n_bits != n_bits:
            raise DescriptorLengthError(f"Descriptor widths differ: {n_bits} vs {d.n_bits}")
    n_bytes = len(descriptors[0].bits)
    padded = (n_bytes + 7) // 8 * 8
    buf = np.zeros((len(descriptors), padded), dtype=np.uint8)
    buf[:, :n_bytes] = np.frombuffer(b"".join(d.bits for d in descriptors), dtype=np.uint8).reshape(
        len(descriptors), n_bytes
    )
    return buf.view("<u8"), n_bits


def row_popcounts(words: np.ndarray) -> np.ndarray:
    """每个描述子的置位数。"""
    return np.bitwise_count(words).sum(axis=1, dtype=np.int64)


def pairwise_f11(query_words: np.ndarray, train_words: np.ndarray) -> np.ndarray:
    """(Q, T) 矩阵：popcount(q AND t)。"""
    both = query_words[:, None, :] & train_words[None, :, :]
    return np.bitwise_count(both).sum(axis=2, dtype=np.int64)


def pairwise_counts(
    query_words: np.ndarray, train_words: np.ndarray, n_bits: int
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    一次 AND-popcount 得到全部四个计数矩阵：
    f10 = |q| - f11，f01 = |t| - f11，f00 = n - f11 - f10 - f01。
    """
    f11 = pairwise_f11(query_words, train_words)
    f10 = row_popcounts(query_words)[:, None] - f11
    f01 = row_popcounts(train_words)[None, :] - f11
    f00 = n_bits - f11 - f10 - f01
    return f00, f01, f10, f11
