"""
灰度图像：PGM 读写、透视变换与对齐残差。
"""

from .pgm_io import read_pgm, write_pgm, load_pgm, save_pgm
from .warping import warp_perspective, bilinear_sample
from .residual import alignment_residual, residual_layers, score_layers, ResidualLayers

__all__ = [
    "read_pgm",
    "write_pgm",
    "load_pgm",
    "save_pgm",
    "warp_perspective",
    "bilinear_sample",
    "alignment_residual",
    "residual_layers",
    "score_layers",
    "ResidualLayers",
]
