"""
几何：单应矩阵估计、投影与真值比较。
"""

from .splitmix import SplitMix64, mix_seed
from .eigen import jacobi_eigh
from .homography_estimator import (
    project,
    project_points,
    reprojection_error,
    dlt_homography,
    dlt_from_points,
    ransac_homography,
    ransac_points,
    RansacResult,
)
from .ground_truth import (
    compare_to_truth,
    read_homography_file,
    write_homography_file,
    parse_homography_text,
)

__all__ = [
    "SplitMix64",
    "mix_seed",
    "jacobi_eigh",
    "project",
    "project_points",
    "reprojection_error",
    "dlt_homography",
    "dlt_from_points",
    "ransac_homography",
    "ransac_points",
    "RansacResult",
    "compare_to_truth",
    "read_homography_file",
    "write_homography_file",
    "parse_homography_text",
]
