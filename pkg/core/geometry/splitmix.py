"""
SplitMix64 伪随机数生成器与种子混合。

所有需要随机性的环节（RANSAC 采样、BRIEF 采样模式、合成数据）都用它，
同一种子在任意平台上产生同一序列。
"""

import hashlib

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 的输出混合函数。"""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """64 位状态、步长为黄金比例常数的生成器。"""

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        return mix64(self._state)

    def next_below(self, n: int) -> int:
        """[0, n) 内的整数（乘法取高位）。"""
        if n <= 0:
            raise ValueError("n must be positive")
        return (self.next_u64() * n) >> 64

    def next_int(self, lo: int, hi: int) -> int:
        """闭区间 [lo, hi] 内的整数。"""
        return lo + self.next_below(hi - lo + 1)

    def next_float(self) -> float:
        """[0, 1) 内的 53 位精度浮点数。"""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.next_float()


def text_key(text: str) -> int:
    """把字符串（如 pair_id）映射为 64 位整数。"""
    return int.from_bytes(hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest(), "little")


def mix_seed(*parts) -> int:
    """依次把各部分（整数或字符串）混入种子。"""
    state = 0
    for part in parts:
        key = text_key(part) if isinstance(part, str) else int(part) & MASK64
        state = mix64((state + GOLDEN_GAMMA) ^ key)
    return state
