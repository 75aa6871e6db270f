"""
单应矩阵估计：Hartley 归一化 DLT 与确定性 RANSAC，以及点投影工具。
"""

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from core.exceptions import (
    DegenerateGeometryError,
    EstimationFailedError,
    GeometryError,
    InsufficientPointsError,
    PointAtInfinityError,
)
from core.geometry.eigen import jacobi_eigh
from core.geometry.splitmix import SplitMix64
from core.models.homography import Homography, PointCorrespondence, RansacParams
from core.models.keypoint import Keypoint
from core.models.match_pair import MatchPair
from modules.YA_Common.utils.logger import get_logger

logger = get_logger(__name__)

W_EPS = 1e-12
COLLINEAR_AREA = 1e-6
# 次小特征值与最大特征值之比低于此值视为秩亏
RANK_EPS = 1e-10

MatrixLike = Union[Homography, np.ndarray, Sequence[Sequence[float]]]


def _as_matrix(h: MatrixLike) -> np.ndarray:
    if isinstance(h, Homography):
        return h.h
    return np.asarray(h, dtype=np.float64).reshape(3, 3)


def project(h: MatrixLike, x: float, y: float) -> Tuple[float, float]:
    """把 (x, y) 经 H 投影；接受未归一化的矩阵，结果与缩放无关。"""
    m = _as_matrix(h)
    w = m[2, 0] * x + m[2, 1] * y + m[2, 2]
    if abs(w) < W_EPS:
        raise PointAtInfinityError(f"Point ({x}, {y}) maps to infinity")
    px = (m[0, 0] * x + m[0, 1] * y + m[0, 2]) / w
    py = (m[1, 0] * x + m[1, 1] * y + m[1, 2]) / w
    return float(px), float(py)


def project_points(h: MatrixLike, pts: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    批量投影。

    Returns:
        ((N, 2) 投影坐标, (N,) 是否有限)；无穷远点的坐标为 nan
    """
    m = _as_matrix(h)
    pts = np.asarray(pts, dtype=np.float64).reshape(-1, 2)
    x = pts[:, 0]
    y = pts[:, 1]
    w = m[2, 0] * x + m[2, 1] * y + m[2, 2]
    valid = np.abs(w) >= W_EPS
    safe_w = np.where(valid, w, 1.0)
    px = (m[0, 0] * x + m[0, 1] * y + m[0, 2]) / safe_w
    py = (m[1, 0] * x + m[1, 1] * y + m[1, 2]) / safe_w
    out = np.stack([px, py], axis=1)
    out[~valid] = np.nan
    return out, valid


def reprojection_error(h: MatrixLike, c: PointCorrespondence) -> float:
    px, py = project(h, c.x1, c.y1)
    return math.hypot(px - c.x2, py - c.y2)


def _hartley(pts: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """质心移到原点、平均距离缩放为 sqrt(2)。返回 (归一化点, T, T 的逆)。"""
    centroid = pts.mean(axis=0)
    mean_dist = float(np.sqrt(((pts - centroid) ** 2).sum(axis=1)).mean())
    if mean_dist < 1e-12:
        raise DegenerateGeometryError("All points coincide")
    s = math.sqrt(2.0) / mean_dist
    t = np.array([[s, 0.0, -s * centroid[0]], [0.0, s, -s * centroid[1]], [0.0, 0.0, 1.0]])
    t_inv = np.array([[1.0 / s, 0.0, centroid[0]], [0.0, 1.0 / s, centroid[1]], [0.0, 0.0, 1.0]])
    return (pts - centroid) * s, t, t_inv


def _design_matrix(src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    x, y = src[:, 0], src[:, 1]
    u, v = dst[:, 0], dst[:, 1]
    n = src.shape[0]
    ones = np.ones(n)
    zeros = np.zeros(n)
    a = np.zeros((2 * n, 9))
    a[0::2] = np.column_stack([x, y, ones, zeros, zeros, zeros, -u * x, -u * y, -u])
    a[1::2] = np.column_stack([zeros, zeros, zeros, x, y, ones, -v * x, -v * y, -v])
    return a


def dlt_from_points(src: np.ndarray, dst: np.ndarray) -> Homography:
    """由 (N, 2) 点阵列估计 src -> dst 的单应矩阵（最小二乘意义）。"""
    src = np.asarray(src, dtype=np.float64).reshape(-1, 2)
    dst = np.asarray(dst, dtype=np.float64).reshape(-1, 2)
    if src.shape[0] < 4 or src.shape != dst.shape:
        raise InsufficientPointsError(f"DLT needs at least 4 correspondences, got {src.shape[0]}")
    src_n, t_src, _ = _hartley(src)
    dst_n, _, t_dst_inv = _hartley(dst)

    a = _design_matrix(src_n, dst_n)
    eigvals, eigvecs = jacobi_eigh(a.T @ a)
    order = np.argsort(eigvals, kind="stable")
    largest = max(float(eigvals[order[-1]]), 1e-300)
    if float(eigvals[order[1]]) <= RANK_EPS * largest:
        raise DegenerateGeometryError("Correspondences do not determine a unique homography")

    h_norm = eigvecs[:, order[0]].reshape(3, 3)
    return Homography(t_dst_inv @ h_norm @ t_src)


def dlt_homography(corrs: Sequence[PointCorrespondence]) -> Homography:
    """归一化 DLT：至少 4 组对应点。"""
    if len(corrs) < 4:
        raise InsufficientPointsError(f"DLT needs at least 4 correspondences, got {len(corrs)}")
    src = np.array([[c.x1, c.y1] for c in corrs], dtype=np.float64)
    dst = np.array([[c.x2, c.y2] for c in corrs], dtype=np.float64)
    return dlt_from_points(src, dst)


def _has_collinear_triple(pts: np.ndarray) -> bool:
    for i, j, k in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)):
        a, b, c = pts[i], pts[j], pts[k]
        area = 0.5 * abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
        if area < COLLINEAR_AREA:
            return True
    return False


def _forward_errors(h: Homography, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    projected, valid = project_points(h, src)
    err = np.sqrt(((projected - dst) ** 2).sum(axis=1))
    return np.where(valid, err, np.inf)


def required_iterations(inlier_ratio: float, confidence: float, max_iters: int) -> int:
    """标准置信界 N >= log(1 - confidence) / log(1 - w^4)。"""
    p = inlier_ratio**4
    if p >= 1.0:
        return 0
    if p <= 0.0:
        return max_iters
    n = math.log(1.0 - confidence) / math.log1p(-p)
    return min(max_iters, int(math.ceil(n)))


def _draw_sample(rng: SplitMix64, n: int) -> List[int]:
    idx: List[int] = []
    while len(idx) < 4:
        k = rng.next_below(n)
        if k not in idx:
            idx.append(k)
    return idx


@dataclass(frozen=True, eq=False)
class RansacResult:
    """RANSAC 输出：模型、逐匹配内点标记与迭代统计。"""

    homography: Homography
    inliers: np.ndarray
    iterations: int

    @property
    def inlier_count(self) -> int:
        return int(self.inliers.sum())

    def __iter__(self):
        # 允许 H, flags = ransac_homography(...)
        yield self.homography
        yield self.inliers


def ransac_points(src: np.ndarray, dst: np.ndarray, params: RansacParams) -> RansacResult:
    """对 (N, 2) 点阵列做 RANSAC。"""
    src = np.asarray(src, dtype=np.float64).reshape(-1, 2)
    dst = np.asarray(dst, dtype=np.float64).reshape(-1, 2)
    n = src.shape[0]
    if n < 4:
        raise InsufficientPointsError(f"RANSAC needs at least 4 matches, got {n}")

    rng = SplitMix64(params.seed)
    best_h = None
    best_mask = None
    best_count = 0
    needed = params.max_iters
    iterations = 0

    while iterations < min(params.max_iters, needed):
        iterations += 1
        idx = _draw_sample(rng, n)
        s_src, s_dst = src[idx], dst[idx]
        if _has_collinear_triple(s_src) or _has_collinear_triple(s_dst):
            continue
        try:
            h = dlt_from_points(s_src, s_dst)
        except GeometryError:
            continue
        mask = _forward_errors(h, src, dst) <= params.reproj_threshold
        count = int(mask.sum())
        if count > best_count:
            best_h, best_mask, best_count = h, mask, count
            needed = required_iterations(count / n, params.confidence, params.max_iters)

    if best_h is None or best_count < 4:
        raise EstimationFailedError(
            f"No hypothesis with at least 4 inliers after {iterations} iterations"
        )

    # 最终模型总是在全部内点上重新拟合；内点标记随之按新模型重算
    final_h, final_mask = best_h, best_mask
    try:
        refit = dlt_from_points(src[best_mask], dst[best_mask])
        refit_mask = _forward_errors(refit, src, dst) <= params.reproj_threshold
        if int(refit_mask.sum()) >= 4:
            final_h, final_mask = refit, refit_mask
        else:
            logger.debug("Inlier refit keeps fewer than 4 inliers, keeping best hypothesis")
    except GeometryError as e:
        logger.debug(f"Inlier refit failed, keeping best hypothesis: {e}")

    logger.debug(
        f"RANSAC: {int(final_mask.sum())}/{n} inliers after {iterations} iterations (seed={params.seed})"
    )
    return RansacResult(final_h, final_mask, iterations)


def ransac_homography(
    matches: Sequence[MatchPair],
    kps_a: Sequence[Keypoint],
    kps_b: Sequence[Keypoint],
    params: RansacParams,
) -> RansacResult:
    """由匹配对与两幅图的关键点估计单应矩阵；inliers 与 matches 一一对应。"""
    if len(matches) < 4:
        raise InsufficientPointsError(f"RANSAC needs at least 4 matches, got {len(matches)}")
    src = np.array([[kps_a[m.query_idx].x, kps_a[m.query_idx].y] for m in matches])
    dst = np.array([[kps_b[m.train_idx].x, kps_b[m.train_idx].y] for m in matches])
    return ransac_points(src, dst, params)
