"""
列联计数与五种距离度量的测试。
"""

import math

import pytest
from hypothesis import given, settings, HealthCheck
from hypothesis import strategies as st

from core.descriptors.contingency import (
    contingency,
    pack_descriptors,
    pairwise_counts,
    popcount_bytes,
)
from core.descriptors.metrics import (
    distance,
    distance_arrays,
    distance_between,
    similarity_hamming,
)
from core.exceptions import DescriptorLengthError
from core.models.binary_descriptor import BinaryDescriptor, ContingencyCounts
from core.models.metric import MetricId


# ---------------------------------------------------------------------------
# Strategies
# ---------------------------------------------------------------------------

WIDTHS = st.sampled_from([1, 7, 8, 13, 64, 128, 256, 512])


@st.composite
def descriptor_pairs(draw, width=None):
    n = width if width is not None else draw(WIDTHS)
    a = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    b = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return BinaryDescriptor.from_bits(a), BinaryDescriptor.from_bits(b)


def _naive_counts(a: BinaryDescriptor, b: BinaryDescriptor):
    counts = {"00": 0, "01": 0, "10": 0, "11": 0}
    for x, y in zip(a.to_bits(), b.to_bits()):
        counts[f"{x}{y}"] += 1
    return counts["00"], counts["01"], counts["10"], counts["11"]


# ---------------------------------------------------------------------------
# BinaryDescriptor
# ---------------------------------------------------------------------------


class TestBinaryDescriptor:

    def test_bitstring_first_char_is_bit_zero(self):
        d = BinaryDescriptor.from_bitstring("1000")
        assert d.bits == b"\x01"
        assert d.n_bits == 4

    def test_nonzero_pad_bits_rejected(self):
        with pytest.raises(DescriptorLengthError):
            BinaryDescriptor(b"\xff", 4)

    def test_byte_count_must_match_width(self):
        with pytest.raises(DescriptorLengthError):
            BinaryDescriptor(b"\x00\x00", 4)

    def test_zero_width_rejected(self):
        with pytest.raises(DescriptorLengthError):
            BinaryDescriptor(b"", 0)


# ---------------------------------------------------------------------------
# Contingency counts
# ---------------------------------------------------------------------------


class TestContingency:

    def test_popcount_example(self):
        assert popcount_bytes(bytes([0xA9])) == 4

    def test_popcount_empty(self):
        assert popcount_bytes(b"") == 0

    def test_four_bit_example(self):
        c = contingency(
            BinaryDescriptor.from_bitstring("1010"),
            BinaryDescriptor.from_bitstring("1001"),
        )
        assert c.as_tuple() == (1, 1, 1, 1)

    def test_width_mismatch(self):
        with pytest.raises(DescriptorLengthError):
            contingency(
                BinaryDescriptor.from_bitstring("1010"),
                BinaryDescriptor.from_bitstring("10101"),
            )

    @given(pair=descriptor_pairs())
    @settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_matches_per_bit_loop(self, pair):
        """按位循环计数与 popcount 结果一致，包括非字节对齐宽度。"""
        a, b = pair
        assert contingency(a, b).as_tuple() == _naive_counts(a, b)

    @given(pair=descriptor_pairs())
    @settings(max_examples=100, deadline=None)
    def test_counts_sum_to_width(self, pair):
        a, b = pair
        c = contingency(a, b)
        assert c.f00 + c.f01 + c.f10 + c.f11 == a.n_bits

    @given(pair=descriptor_pairs())
    @settings(max_examples=100, deadline=None)
    def test_swap_exchanges_f01_f10(self, pair):
        a, b = pair
        assert contingency(b, a) == contingency(a, b).swapped()

    def test_pairwise_counts_match_scalar(self):
        descs = [
            BinaryDescriptor.from_bitstring(s)
            for s in ("1010110", "0000000", "1111111", "0110011")
        ]
        words, n_bits = pack_descriptors(descs)
        f00, f01, f10, f11 = pairwise_counts(words, words, n_bits)
        for i, a in enumerate(descs):
            for j, b in enumerate(descs):
                c = contingency(a, b)
                assert (f00[i, j], f01[i, j], f10[i, j], f11[i, j]) == c.as_tuple()

    def test_pack_rejects_mixed_widths(self):
        with pytest.raises(DescriptorLengthError):
            pack_descriptors(
                [BinaryDescriptor.from_bitstring("1"), BinaryDescriptor.from_bitstring("10")]
            )


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------


class TestMetrics:

    def test_balanced_counts(self):
        c = ContingencyCounts(f00=1, f01=1, f10=1, f11=1, n_bits=4)
        assert distance(MetricId.HAMMING, c) == pytest.approx(0.5)
        assert distance(MetricId.JACCARD, c) == pytest.approx(2 / 3)
        assert distance(MetricId.CORRELATION, c) == pytest.approx(0.5)
        assert distance(MetricId.DICE, c) == pytest.approx(0.5)
        assert distance(MetricId.YULE, c) == pytest.approx(0.5)

    def test_all_mismatch_one_sided(self):
        c = ContingencyCounts(f00=0, f01=0, f10=8, f11=0, n_bits=8)
        assert distance(MetricId.HAMMING, c) == 1.0
        assert distance(MetricId.JACCARD, c) == 1.0
        assert distance(MetricId.CORRELATION, c) == 0.5
        assert distance(MetricId.DICE, c) == 1.0
        assert distance(MetricId.YULE, c) == 1.0

    @pytest.mark.parametrize("metric", list(MetricId))
    def test_identical_all_zero_descriptors(self, metric):
        c = ContingencyCounts(f00=8, f01=0, f10=0, f11=0, n_bits=8)
        assert distance(metric, c) == 0.0

    @pytest.mark.parametrize("metric", list(MetricId))
    def test_identical_all_one_descriptors(self, metric):
        c = ContingencyCounts(f00=0, f01=0, f10=0, f11=8, n_bits=8)
        assert distance(metric, c) == 0.0

    def test_perfect_anticorrelation(self):
        c = ContingencyCounts(f00=0, f01=4, f10=4, f11=0, n_bits=8)
        assert distance(MetricId.CORRELATION, c) == pytest.approx(1.0)

    def test_hamming_similarity_complements_distance(self):
        c = ContingencyCounts(f00=3, f01=2, f10=1, f11=2, n_bits=8)
        assert similarity_hamming(c) + distance(MetricId.HAMMING, c) == pytest.approx(1.0)

    @given(pair=descriptor_pairs(), metric=st.sampled_from(list(MetricId)))
    @settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_range_and_symmetry(self, pair, metric):
        a, b = pair
        d_ab = distance_between(metric, a, b)
        d_ba = distance_between(metric, b, a)
        assert 0.0 <= d_ab <= 1.0
        assert d_ab == pytest.approx(d_ba, abs=1e-12)

    @given(pair=descriptor_pairs())
    @settings(max_examples=100, deadline=None)
    def test_self_distance_is_zero(self, pair):
        a, _ = pair
        for metric in MetricId:
            assert distance_between(metric, a, a) == 0.0

    @given(pair=descriptor_pairs())
    @settings(max_examples=200, deadline=None)
    def test_dice_is_monotone_in_jaccard(self, pair):
        a, b = pair
        j = distance_between(MetricId.JACCARD, a, b)
        d = distance_between(MetricId.DICE, a, b)
        assert d == pytest.approx(j / (2.0 - j), abs=1e-12)

    def test_vectorized_matches_scalar(self):
        cases = [(1, 1, 1, 1), (0, 0, 8, 0), (5, 0, 0, 3), (2, 3, 1, 2)]
        f00, f01, f10, f11 = (list(col) for col in zip(*cases))
        for metric in MetricId:
            vec = distance_arrays(metric, f00, f01, f10, f11)
            for k, (a, b, c, d) in enumerate(cases):
                scalar = distance(metric, ContingencyCounts(a, b, c, d, a + b + c + d))
                assert vec[k] == scalar
                assert math.isfinite(scalar)


class TestMetricId:

    def test_parse_aliases(self):
        assert MetricId.parse("Jaccard-Needham") is MetricId.JACCARD
        assert MetricId.parse(" YULE ") is MetricId.YULE

    def test_parse_list_rejects_duplicates(self):
        from core.exceptions import ParameterError

        with pytest.raises(ParameterError):
            MetricId.parse_list("hamming,hamming")

    def test_ordinals_follow_table_order(self):
        assert [m.ordinal for m in MetricId] == [0, 1, 2, 3, 4]
