"""
暴力匹配器测试：与双重循环参照实现对比、并列规则、交叉验证与并行确定性。
"""

import pytest
from hypothesis import given, settings, HealthCheck
from hypothesis import strategies as st

from core.descriptors.metrics import distance_between
from core.exceptions import DescriptorLengthError, EmptySetError
from core.matching.brute_force_matcher import brute_force_match, match_all_metrics, nearest
from core.models.binary_descriptor import BinaryDescriptor
from core.models.match_pair import MatchPair
from core.models.metric import MetricId


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _desc_sets(n_bits: int, max_size: int = 12):
    desc = st.lists(st.integers(0, 1), min_size=n_bits, max_size=n_bits).map(BinaryDescriptor.from_bits)
    return st.lists(desc, min_size=1, max_size=max_size)


def _reference_match(queries, trains, metric, cross_check=False):
    """双重循环参照实现：严格小于才替换，因此并列时取最小下标。"""

    def best_train(q):
        best_j, best_d = 0, float("inf")
        for j, t in enumerate(trains):
            d = distance_between(metric, q, t)
            if d < best_d:
                best_j, best_d = j, d
        return best_j, best_d

    def best_query(t):
        best_i, best_d = 0, float("inf")
        for i, q in enumerate(queries):
            d = distance_between(metric, q, t)
            if d < best_d:
                best_i, best_d = i, d
        return best_i

    out = []
    for i, q in enumerate(queries):
        j, d = best_train(q)
        if cross_check and best_query(trains[j]) != i:
            continue
        out.append(MatchPair(i, j, d))
    return out


def _d(text: str) -> BinaryDescriptor:
    return BinaryDescriptor.from_bitstring(text)


# ---------------------------------------------------------------------------
# Tests
# ---------------------------------------------------------------------------


class TestBruteForceMatch:

    @given(
        queries=_desc_sets(16),
        trains=_desc_sets(16),
        metric=st.sampled_from(list(MetricId)),
        cross_check=st.booleans(),
    )
    @settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_matches_nested_loop_reference(self, queries, trains, metric, cross_check):
        got = brute_force_match(queries, trains, metric, cross_check=cross_check)
        assert got == _reference_match(queries, trains, metric, cross_check)

    def test_one_match_per_query_without_cross_check(self):
        queries = [_d("1100"), _d("0011"), _d("1111")]
        trains = [_d("1100"), _d("0011")]
        matches = brute_force_match(queries, trains, MetricId.HAMMING)
        assert [m.query_idx for m in matches] == [0, 1, 2]
        assert matches[0] == MatchPair(0, 0, 0.0)
        assert matches[1] == MatchPair(1, 1, 0.0)

    def test_tie_breaks_to_lowest_train_index(self):
        trains = [_d("1000"), _d("0100"), _d("0010")]
        match = brute_force_match([_d("0001")], trains, MetricId.HAMMING)[0]
        assert match.train_idx == 0
        assert match.dist == pytest.approx(0.5)

    def test_cross_check_keeps_mutual_best_only(self):
        queries = [_d("1111"), _d("1110")]
        trains = [_d("1111")]
        matches = brute_force_match(queries, trains, MetricId.HAMMING, cross_check=True)
        assert matches == [MatchPair(0, 0, 0.0)]

    def test_cross_check_on_identical_sets_is_identity(self):
        descs = [_d("11000000"), _d("00110000"), _d("00001100"), _d("00000011")]
        for metric in MetricId:
            matches = brute_force_match(descs, descs, metric, cross_check=True)
            assert [(m.query_idx, m.train_idx) for m in matches] == [(i, i) for i in range(4)]

    def test_empty_sets_raise(self):
        with pytest.raises(EmptySetError):
            brute_force_match([], [_d("1")], MetricId.HAMMING)
        with pytest.raises(EmptySetError):
            brute_force_match([_d("1")], [], MetricId.HAMMING)

    def test_width_mismatch_raises(self):
        with pytest.raises(DescriptorLengthError):
            brute_force_match([_d("1010")], [_d("10100")], MetricId.HAMMING)

    @given(queries=_desc_sets(64, 40), trains=_desc_sets(64, 40))
    @settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_jaccard_and_dice_select_the_same_matches(self, queries, trains):
        both = match_all_metrics(queries, trains, [MetricId.JACCARD, MetricId.DICE])
        jac = [(m.query_idx, m.train_idx) for m in both[MetricId.JACCARD]]
        dice = [(m.query_idx, m.train_idx) for m in both[MetricId.DICE]]
        assert jac == dice

    @given(queries=_desc_sets(32, 30), trains=_desc_sets(32, 30), cross_check=st.booleans())
    @settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_result_independent_of_workers_and_chunking(self, queries, trains, cross_check):
        metrics = list(MetricId)
        serial = match_all_metrics(queries, trains, metrics, cross_check=cross_check)
        parallel = match_all_metrics(
            queries, trains, metrics, cross_check=cross_check, workers=4, chunk_size=3
        )
        assert serial == parallel

    def test_match_distance_equals_recomputed_distance(self):
        queries = [_d("1011001110"), _d("0001110001")]
        trains = [_d("1111000011"), _d("0101010101"), _d("1011001111")]
        for metric in MetricId:
            for m in brute_force_match(queries, trains, metric):
                assert m.dist == distance_between(metric, queries[m.query_idx], trains[m.train_idx])


class TestNearest:

    def test_nearest_returns_index_and_distance(self):
        idx, dist = nearest(_d("1100"), [_d("0011"), _d("1101"), _d("1100")], MetricId.HAMMING)
        assert idx == 2
        assert dist == 0.0

    def test_nearest_empty_train_set(self):
        with pytest.raises(EmptySetError):
            nearest(_d("1100"), [], MetricId.YULE)
