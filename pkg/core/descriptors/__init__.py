"""
二进制描述子运算：列联计数与距离度量。
"""

from .contingency import contingency, popcount_bytes, pack_descriptors, pairwise_counts
from .metrics import distance, distance_between, distance_arrays, similarity_hamming

__all__ = [
    "contingency",
    "popcount_bytes",
    "pack_descriptors",
    "pairwise_counts",
    "distance",
    "distance_between",
    "distance_arrays",
    "similarity_hamming",
]
