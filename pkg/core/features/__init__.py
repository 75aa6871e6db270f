"""
特征：FAST-9 检测、BRIEF 描述与 BDSC 描述子文件。
"""

from .fast_detector import fast_detect, fast_score_map, non_max_suppression, CIRCLE_OFFSETS
from .brief_extractor import (
    brief_describe,
    brief_describe_widths,
    generate_pattern,
    descriptor_name_for,
    split_keypoints,
    SUPPORTED_WIDTHS,
)
from .descriptor_file import (
    read_descriptor_file,
    write_descriptor_file,
    load_descriptor_file,
    save_descriptor_file,
)

__all__ = [
    "fast_detect",
    "fast_score_map",
    "non_max_suppression",
    "CIRCLE_OFFSETS",
    "brief_describe",
    "brief_describe_widths",
    "generate_pattern",
    "descriptor_name_for",
    "split_keypoints",
    "SUPPORTED_WIDTHS",
    "read_descriptor_file",
    "write_descriptor_file",
    "load_descriptor_file",
    "save_descriptor_file",
]
