"""
循环 Jacobi 对称特征分解。
"""

import math
from typing import Tuple

import numpy as np

from core.exceptions import DegenerateGeometryError
from modules.YA_Common.utils.logger import get_logger

logger = get_logger(__name__)

OFF_DIAGONAL_TOL = 1e-12
MAX_SWEEPS = 100


def _off_norm(a: np.ndarray) -> float:
    upper = np.triu(a, 1)
    return math.sqrt(2.0 * float(np.sum(upper * upper)))


def jacobi_eigh(
    matrix: np.ndarray, tol: float = OFF_DIAGONAL_TOL, max_sweeps: int = MAX_SWEEPS
) -> Tuple[np.ndarray, np.ndarray]:
    """
    对称矩阵的特征值与特征向量。

    按 (p, q) 行优先顺序逐个旋转消去非对角元，直到非对角范数不超过
    tol 乘以矩阵 Frobenius 范数。

    Returns:
        (eigenvalues, eigenvectors)，eigenvectors 的第 k 列对应第 k 个特征值，
        顺序为对角线顺序（未排序）
    """
    a = np.array(matrix, dtype=np.float64, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("jacobi_eigh expects a square matrix")
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-9 * (np.abs(a).max() + 1.0)):
        raise ValueError("jacobi_eigh expects a symmetric matrix")
    a = 0.5 * (a + a.T)
    v = np.eye(n)
    scale = float(np.linalg.norm(a)) or 1.0

    for sweep in range(max_sweeps):
        if _off_norm(a) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0

                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
    else:
        if _off_norm(a) > tol * scale:
            raise DegenerateGeometryError(
                f"Jacobi eigen-decomposition did not converge in {max_sweeps} sweeps"
            )

    return np.diag(a).copy(), v
