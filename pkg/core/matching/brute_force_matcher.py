"""
暴力最近邻匹配。

查询集按块划分，每块一次性算出与全部训练描述子的列联计数，
再按所需的每种度量取行最小值；并行只发生在块之间，
合并时按块顺序进行，结果与线程数无关。
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from core.descriptors.contingency import pack_descriptors, pairwise_counts
from core.descriptors.metrics import distance_arrays
from core.exceptions import DescriptorLengthError, EmptySetError
from core.models.binary_descriptor import BinaryDescriptor
from core.models.match_pair import MatchPair
from core.models.metric import MetricId
from modules.YA_Common.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_CHUNK_SIZE = 256


@dataclass
class _ChunkResult:
    """一个查询块的行最优与列最优（每种度量一份）。"""

    start: int
    row_idx: Dict[MetricId, np.ndarray]
    row_dist: Dict[MetricId, np.ndarray]
    col_idx: Dict[MetricId, np.ndarray]
    col_dist: Dict[MetricId, np.ndarray]


def _check_inputs(
    queries: Sequence[BinaryDescriptor], trains: Sequence[BinaryDescriptor]
) -> Tuple[np.ndarray, np.ndarray, int]:
    if not queries:
        raise EmptySetError("Query descriptor set is empty")
    if not trains:
        raise EmptySetError("Train descriptor set is empty")
    q_words, q_bits = pack_descriptors(queries)
    t_words, t_bits = pack_descriptors(trains)
    if q_bits != t_bits:
        raise DescriptorLengthError(f"Query width {q_bits} differs from train width {t_bits}")
    return q_words, t_words, q_bits


def _match_chunk(
    start: int,
    q_words: np.ndarray,
    t_words: np.ndarray,
    n_bits: int,
    metrics: Sequence[MetricId],
) -> _ChunkResult:
    f00, f01, f10, f11 = pairwise_counts(q_words, t_words, n_bits)
    result = _ChunkResult(start, {}, {}, {}, {})
    for metric in metrics:
        dist = distance_arrays(metric, f00, f01, f10, f11)
        # argmin 在并列时取最小下标
        row_idx = np.argmin(dist, axis=1)
        col_idx = np.argmin(dist, axis=0)
        result.row_idx[metric] = row_idx
        result.row_dist[metric] = dist[np.arange(dist.shape[0]), row_idx]
        result.col_idx[metric] = col_idx + start
        result.col_dist[metric] = dist[col_idx, np.arange(dist.shape[1])]
    return result


def match_all_metrics(
    queries: Sequence[BinaryDescriptor],
    trains: Sequence[BinaryDescriptor],
    metrics: Sequence[MetricId],
    cross_check: bool = False,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> Dict[MetricId, List[MatchPair]]:
    """
    对每种度量做暴力匹配，列联计数只计算一次。

    Args:
        queries: 查询描述子（图像 1）
        trains: 训练描述子（图像 2）
        metrics: 需要的度量
        cross_check: 只保留互为最近邻的匹配
        workers: 查询块的并行线程数
        chunk_size: 每块查询数

    Returns:
        度量 -> 按 query_idx 升序排列的 MatchPair 列表
    """
    q_words, t_words, n_bits = _check_inputs(queries, trains)
    chunk_size = max(1, int(chunk_size))
    starts = list(range(0, q_words.shape[0], chunk_size))

    def run(start: int) -> _ChunkResult:
        return _match_chunk(start, q_words[start : start + chunk_size], t_words, n_bits, metrics)

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(run, starts))
    else:
        chunks = [run(s) for s in starts]

    n_train = t_words.shape[0]
    matches: Dict[MetricId, List[MatchPair]] = {}
    for metric in metrics:
        row_idx = np.concatenate([c.row_idx[metric] for c in chunks])
        row_dist = np.concatenate([c.row_dist[metric] for c in chunks])

        keep = np.ones(row_idx.shape[0], dtype=bool)
        if cross_check:
            # 按块顺序合并列最优，只有严格更小才替换，保证并列时取最小查询下标
            best_q = np.zeros(n_train, dtype=np.int64)
            best_d = np.full(n_train, np.inf)
            for c in chunks:
                better = c.col_dist[metric] < best_d
                best_q = np.where(better, c.col_idx[metric], best_q)
                best_d = np.where(better, c.col_dist[metric], best_d)
            keep = best_q[row_idx] == np.arange(row_idx.shape[0])

        matches[metric] = [
            MatchPair(int(q), int(row_idx[q]), float(row_dist[q])) for q in np.flatnonzero(keep)
        ]
        logger.debug(
            f"{metric.value}: {len(matches[metric])} matches "
            f"({q_words.shape[0]} queries x {n_train} trains, cross_check={cross_check})"
        )
    return matches


def brute_force_match(
    queries: Sequence[BinaryDescriptor],
    trains: Sequence[BinaryDescriptor],
    metric: MetricId,
    cross_check: bool = False,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> List[MatchPair]:
    """每个查询描述子与其最近训练描述子配对；cross_check 时只保留互为最近邻的对。"""
    return match_all_metrics(queries, trains, [metric], cross_check, workers, chunk_size)[metric]


def nearest(
    query: BinaryDescriptor, trains: Sequence[BinaryDescriptor], metric: MetricId
) -> Tuple[int, float]:
    """距离最小的训练下标与距离，并列时取最小下标。"""
    if not trains:
        raise EmptySetError("Train descriptor set is empty")
    match = brute_force_match([query], trains, metric)[0]
    return match.train_idx, match.dist
