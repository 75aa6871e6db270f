"""
二进制描述子与列联计数数据模型。
"""

from dataclasses import dataclass
from typing import Dict, Any, Iterable, List

from core.exceptions import DescriptorLengthError

MAX_DESCRIPTOR_BITS = 4096


@dataclass(frozen=True)
class BinaryDescriptor:
    """
    定长位串描述子。

    位序为字节内小端：第 i 位是第 i // 8 个字节的第 i % 8 位。
    n_bits 之后的填充位必须为 0。实例不可变，可在并行匹配线程间共享。
    """

    bits: bytes
    n_bits: int

    def __post_init__(self):
        if not isinstance(self.bits, bytes):
            object.__setattr__(self, "bits", bytes(self.bits))
        if self.n_bits < 1 or self.n_bits > MAX_DESCRIPTOR_BITS:
            raise DescriptorLengthError(
                f"n_bits must be in [1, {MAX_DESCRIPTOR_BITS}], got {self.n_bits}"
            )
        expected = (self.n_bits + 7) // 8
        if len(self.bits) != expected:
            raise DescriptorLengthError(
                f"{self.n_bits} bits need {expected} bytes, got {len(self.bits)}"
            )
        tail = self.n_bits % 8
        if tail and self.bits[-1] >> tail:
            raise DescriptorLengthError("pad bits beyond n_bits must be zero")

    @classmethod
    def from_bytes(cls, data: bytes, n_bits: int = 0) -> "BinaryDescriptor":
        """n_bits 缺省为 8 * 字节数。"""
        return cls(bytes(data), n_bits or 8 * len(data))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BinaryDescriptor":
        """由 0/1 序列构造，序列第 i 项即第 i 位。"""
        values = [1 if b else 0 for b in bits]
        buf = bytearray((len(values) + 7) // 8)
        for i, v in enumerate(values):
            if v:
                buf[i >> 3] |= 1 << (i & 7)
        return cls(bytes(buf), len(values))

    @classmethod
    def from_bitstring(cls, text: str) -> "BinaryDescriptor":
        """按书写顺序解析 "1010"：第一个字符为第 0 位。"""
        return cls.from_bits(int(ch) for ch in text)

    def bit(self, i: int) -> int:
        if not 0 <= i < self.n_bits:
            raise IndexError(i)
        return (self.bits[i >> 3] >> (i & 7)) & 1

    def to_bits(self) -> List[int]:
        return [self.bit(i) for i in range(self.n_bits)]

    def __len__(self) -> int:
        return self.n_bits

    def to_dict(self) -> Dict[str, Any]:
        return {"bits": self.bits.hex(), "n_bits": self.n_bits}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BinaryDescriptor":
        return cls(bytes.fromhex(data["bits"]), data["n_bits"])


@dataclass(frozen=True)
class ContingencyCounts:
    """两个等长位串逐位比较得到的四个计数 f00、f01、f10、f11。"""

    f00: int
    f01: int
    f10: int
    f11: int
    n_bits: int

    def __post_init__(self):
        if min(self.f00, self.f01, self.f10, self.f11) < 0:
            raise ValueError("Contingency counts must be non-negative")
        if self.n_bits < 1:
            raise ValueError("n_bits must be positive")
        if self.f00 + self.f01 + self.f10 + self.f11 != self.n_bits:
            raise ValueError("Contingency counts must sum to n_bits")

    @property
    def mismatches(self) -> int:
        return self.f01 + self.f10

    def swapped(self) -> "ContingencyCounts":
        """交换两个描述子的角色：f01 与 f10 互换。"""
        return ContingencyCounts(self.f00, self.f10, self.f01, self.f11, self.n_bits)

    def as_tuple(self) -> tuple:
        return (self.f00, self.f01, self.f10, self.f11)
