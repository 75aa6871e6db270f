"""
合成带真值单应矩阵的图像对数据集。

纹理为若干随机幅度、频率、方向与相位的余弦光栅之和，量化到 8 位；
每对图像随机扰动四个角点（不超过边长 15%）得到 H，图像 2 = warp(图像 1, H)。
"""

import math
from pathlib import Path
from typing import List, Union

import numpy as np

from core.exceptions import DegenerateGeometryError, GeometryError, ParameterError
from core.geometry.ground_truth import write_homography_file
from core.geometry.homography_estimator import dlt_from_points
from core.geometry.splitmix import SplitMix64, mix_seed
from core.imaging.pgm_io import save_pgm
from core.imaging.warping import warp_perspective
from core.models.benchmark_config import PairSpec
from core.models.gray_image import GrayImage
from core.models.homography import Homography
from core.benchmark.pair_list import write_pair_list
from modules.YA_Common.utils.logger import get_logger

logger = get_logger(__name__)

MIN_IMAGE_SIZE = 64
N_GRATINGS = 24
FREQ_RANGE = (0.01, 0.2)
MAX_PERTURBATION = 0.15
MAX_ATTEMPTS = 100
PAIR_LIST_NAME = "pairs.csv"
SELF_PAIR_ID = "self"


def synth_texture(rng: SplitMix64, size: int) -> GrayImage:
    """余弦光栅叠加纹理，线性拉伸到 [0, 255]。"""
    ys, xs = np.mgrid[0:size, 0:size].astype(np.float64)
    acc = np.zeros((size, size), dtype=np.float64)
    for _ in range(N_GRATINGS):
        amp = rng.uniform(0.2, 1.0)
        freq = rng.uniform(*FREQ_RANGE)
        theta = rng.uniform(0.0, math.pi)
        phase = rng.uniform(0.0, 2.0 * math.pi)
        acc += amp * np.cos(
            2.0 * math.pi * freq * (xs * math.cos(theta) + ys * math.sin(theta)) + phase
        )
    lo, hi = float(acc.min()), float(acc.max())
    scale = 255.0 / (hi - lo) if hi > lo else 0.0
    pix = np.floor((acc - lo) * scale + 0.5).clip(0, 255).astype(np.uint8)
    return GrayImage(size, size, pix)


def _is_convex(quad: np.ndarray) -> bool:
    signs = []
    for i in range(4):
        a, b, c = quad[i], quad[(i + 1) % 4], quad[(i + 2) % 4]
        cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        signs.append(cross > 0)
    return all(signs) or not any(signs)


def random_homography(rng: SplitMix64, size: int) -> Homography:
    """扰动图像四角得到随机单应矩阵；退化样本最多重抽 100 次。"""
    corners = np.array(
        [[0.0, 0.0], [size - 1.0, 0.0], [size - 1.0, size - 1.0], [0.0, size - 1.0]]
    )
    limit = MAX_PERTURBATION * size
    for _ in range(MAX_ATTEMPTS):
        moved = corners + np.array(
            [[rng.uniform(-limit, limit), rng.uniform(-limit, limit)] for _ in range(4)]
        )
        if not _is_convex(moved):
            continue
        try:
            return dlt_from_points(corners, moved)
        except GeometryError:
            continue
    raise DegenerateGeometryError(f"No invertible homography after {MAX_ATTEMPTS} draws")


def synth_dataset(
    out_dir: Union[str, Path],
    seed: int,
    n_pairs: int,
    image_size: int,
    self_pair: bool = False,
) -> List[PairSpec]:
    """
    生成合成数据集并写出 PGM、真值 H 文本与 pairs.csv。

    Args:
        out_dir: 输出目录
        seed: 数据集种子
        n_pairs: 图像对数量
        image_size: 正方形图像边长，>= 64
        self_pair: 额外添加一个图像与自身配对、真值为单位矩阵的对

    Returns:
        写入 pairs.csv 的图像对清单
    """
    if image_size < MIN_IMAGE_SIZE:
        raise ParameterError(f"image_size must be >= {MIN_IMAGE_SIZE}, got {image_size}")
    if n_pairs < 1:
        raise ParameterError(f"n_pairs must be >= 1, got {n_pairs}")

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    pairs: List[PairSpec] = []
    for k in range(n_pairs):
        pair_id = f"synth{k:03d}"
        img1 = synth_texture(SplitMix64(mix_seed(seed, pair_id, "texture")), image_size)
        h = random_homography(SplitMix64(mix_seed(seed, pair_id, "homography")), image_size)
        img2, _ = warp_perspective(img1, h, image_size, image_size)

        spec = PairSpec(
            pair_id=pair_id,
            image1=out / f"{pair_id}_1.pgm",
            image2=out / f"{pair_id}_2.pgm",
            truth_h=out / f"{pair_id}_H.txt",
        )
        save_pgm(spec.image1, img1)
        save_pgm(spec.image2, img2)
        write_homography_file(spec.truth_h, h)
        pairs.append(spec)

    if self_pair:
        spec = PairSpec(
            pair_id=SELF_PAIR_ID,
            image1=pairs[0].image1,
            image2=pairs[0].image1,
            truth_h=out / f"{SELF_PAIR_ID}_H.txt",
        )
        write_homography_file(spec.truth_h, Homography.identity())
        pairs.append(spec)

    write_pair_list(out / PAIR_LIST_NAME, pairs)
    logger.info(f"Synthesized {len(pairs)} pairs of {image_size}x{image_size} into {out}")
    return pairs
