"""
单应矩阵测试：投影、归一化 DLT、确定性 RANSAC、Jacobi 分解与真值比较。
"""

import numpy as np
import pytest
from hypothesis import given, settings, HealthCheck
from hypothesis import strategies as st

from core.exceptions import (
    DegenerateGeometryError,
    EstimationFailedError,
    FormatError,
    InsufficientPointsError,
    ParameterError,
    PointAtInfinityError,
)
from core.geometry.eigen import jacobi_eigh
from core.geometry.ground_truth import (
    compare_to_truth,
    parse_homography_text,
    read_homography_file,
    write_homography_file,
)
from core.geometry.homography_estimator import (
    dlt_from_points,
    dlt_homography,
    project,
    project_points,
    ransac_homography,
    ransac_points,
    reprojection_error,
    required_iterations,
)
from core.geometry.splitmix import SplitMix64, mix_seed
from core.models.homography import Homography, PointCorrespondence, RansacParams
from core.models.keypoint import Keypoint
from core.models.match_pair import MatchPair


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture
def known_h() -> Homography:
    return Homography.from_matrix(
        [[1.05, 0.02, 12.0], [-0.03, 0.97, -7.5], [2e-4, -1e-4, 1.0]]
    )


def _random_h(rng: np.random.Generator) -> Homography:
    m = np.eye(3)
    m[:2, :2] += rng.uniform(-0.2, 0.2, size=(2, 2))
    m[:2, 2] = rng.uniform(-20.0, 20.0, size=2)
    m[2, :2] = rng.uniform(-1e-3, 1e-3, size=2)
    return Homography.from_matrix(m)


def _map(h: Homography, pts: np.ndarray) -> np.ndarray:
    projected, valid = project_points(h, pts)
    assert valid.all()
    return projected


# ---------------------------------------------------------------------------
# Homography model
# ---------------------------------------------------------------------------


class TestHomographyModel:

    def test_normalized_to_unit_h22(self):
        h = Homography.from_matrix(2.0 * np.eye(3))
        assert h == Homography.identity()

    def test_singular_rejected(self):
        with pytest.raises(DegenerateGeometryError):
            Homography.from_matrix([[1, 2, 3], [2, 4, 6], [0, 0, 1]])

    def test_non_finite_rejected(self):
        with pytest.raises(DegenerateGeometryError):
            Homography.from_matrix([[1, 0, float("nan")], [0, 1, 0], [0, 0, 1]])

    def test_inverse_composes_to_identity(self, known_h):
        product = known_h.compose(known_h.inverse())
        np.testing.assert_allclose(product.h, np.eye(3), atol=1e-12)

    def test_ransac_params_validation(self):
        with pytest.raises(ParameterError):
            RansacParams(reproj_threshold=0.0)
        with pytest.raises(ParameterError):
            RansacParams(confidence=1.0)
        with pytest.raises(ParameterError):
            RansacParams(seed=-1)

    def test_correspondence_must_be_finite(self):
        with pytest.raises(ParameterError):
            PointCorrespondence(0.0, float("inf"), 1.0, 1.0)


# ---------------------------------------------------------------------------
# Projection
# ---------------------------------------------------------------------------


class TestProject:

    def test_identity(self):
        assert project(Homography.identity(), 5, 7) == (5.0, 7.0)

    def test_translation(self):
        assert project(Homography.translation(3, -2), 0, 0) == (3.0, -2.0)

    def test_unnormalized_scale_invariance(self):
        assert project(2.0 * np.eye(3), 5, 7) == (5.0, 7.0)

    @given(
        scale=st.floats(min_value=0.01, max_value=100.0),
        x=st.floats(min_value=-500, max_value=500),
        y=st.floats(min_value=-500, max_value=500),
    )
    @settings(max_examples=100, deadline=None)
    def test_scale_invariance_property(self, scale, x, y):
        m = np.array([[1.1, 0.1, 4.0], [0.05, 0.9, -3.0], [1e-4, 2e-4, 1.0]])
        px, py = project(m, x, y)
        qx, qy = project(scale * m, x, y)
        assert qx == pytest.approx(px, rel=1e-9, abs=1e-9)
        assert qy == pytest.approx(py, rel=1e-9, abs=1e-9)

    def test_point_at_infinity(self):
        m = [[1, 0, 0], [0, 1, 0], [1, 0, 0]]
        with pytest.raises(PointAtInfinityError):
            project(m, 0.0, 5.0)

    def test_reprojection_error(self):
        h = Homography.identity()
        assert reprojection_error(h, PointCorrespondence(1, 2, 1, 2)) == 0.0
        assert reprojection_error(h, PointCorrespondence(0, 0, 3, 4)) == pytest.approx(5.0)


# ---------------------------------------------------------------------------
# DLT
# ---------------------------------------------------------------------------


class TestDlt:

    def test_unit_square_identity(self):
        corrs = [PointCorrespondence(x, y, x, y) for x, y in [(0, 0), (1, 0), (1, 1), (0, 1)]]
        np.testing.assert_allclose(dlt_homography(corrs).h, np.eye(3), atol=1e-9)

    def test_translation_recovered(self):
        pts = [(0, 0), (10, 0), (10, 10), (0, 10)]
        corrs = [PointCorrespondence(x, y, x + 5, y) for x, y in pts]
        expected = np.eye(3)
        expected[0, 2] = 5.0
        np.testing.assert_allclose(dlt_homography(corrs).h, expected, atol=1e-9)

    def test_too_few_points(self):
        corrs = [PointCorrespondence(0, 0, 0, 0), PointCorrespondence(1, 0, 1, 0), PointCorrespondence(0, 1, 0, 1)]
        with pytest.raises(InsufficientPointsError):
            dlt_homography(corrs)

    def test_coincident_points_degenerate(self):
        src = np.zeros((4, 2))
        with pytest.raises(DegenerateGeometryError):
            dlt_from_points(src, src)

    @given(seed=st.integers(min_value=0, max_value=2**32 - 1))
    @settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_random_homography_recovered(self, seed):
        rng = np.random.default_rng(seed)
        h = _random_h(rng)
        src = rng.uniform(0.0, 500.0, size=(20, 2))
        dst = _map(h, src)
        est = dlt_from_points(src, dst)
        np.testing.assert_allclose(est.h, h.h, atol=1e-6)
        corrs = [PointCorrespondence(*s, *d) for s, d in zip(src, dst)]
        assert max(reprojection_error(est, c) for c in corrs) <= 1e-8


# ---------------------------------------------------------------------------
# RANSAC
# ---------------------------------------------------------------------------


class TestRansac:

    def test_perfect_correspondences(self, known_h):
        rng = np.random.default_rng(1)
        src = rng.uniform(0.0, 400.0, size=(100, 2))
        dst = _map(known_h, src)
        result = ransac_points(src, dst, RansacParams(max_iters=500, seed=7))
        np.testing.assert_allclose(result.homography.h, known_h.h, atol=1e-6)
        assert result.inliers.all()

    def test_outliers_rejected(self, known_h):
        rng = np.random.default_rng(2)
        src = rng.uniform(0.0, 400.0, size=(100, 2))
        dst = _map(known_h, src)
        outliers = np.arange(70, 100)
        dst[outliers] = rng.uniform(0.0, 400.0, size=(30, 2))
        # 随机外点恰好落在真值附近时不算错误标记
        true_err = np.hypot(*(_map(known_h, src[outliers]) - dst[outliers]).T)
        genuine = outliers[true_err > 3.0]

        result = ransac_points(src, dst, RansacParams(max_iters=2000, seed=11))
        np.testing.assert_allclose(result.homography.h, known_h.h, atol=1e-3)
        assert result.inlier_count >= 70
        assert result.inliers[:70].all()
        assert not result.inliers[genuine].any()

    def test_deterministic_for_fixed_seed(self, known_h):
        rng = np.random.default_rng(3)
        src = rng.uniform(0.0, 300.0, size=(60, 2))
        dst = _map(known_h, src)
        dst[40:] += rng.uniform(20.0, 60.0, size=(20, 2))
        params = RansacParams(max_iters=300, seed=99)
        a = ransac_points(src, dst, params)
        b = ransac_points(src, dst, params)
        assert a.homography == b.homography
        assert np.array_equal(a.inliers, b.inliers)
        assert a.iterations == b.iterations

    def test_inliers_within_threshold(self, known_h):
        rng = np.random.default_rng(4)
        src = rng.uniform(0.0, 300.0, size=(50, 2))
        dst = _map(known_h, src) + rng.normal(0.0, 0.5, size=(50, 2))
        params = RansacParams(reproj_threshold=2.0, max_iters=500, seed=5)
        result = ransac_points(src, dst, params)
        projected = _map(result.homography, src)
        err = np.hypot(*(projected - dst).T)
        assert (err[result.inliers] <= 2.0).all()

    def test_final_model_refit_on_all_inliers(self, known_h):
        # 带噪声的对应点：四点样本模型误差明显，全部内点重新拟合后接近真值
        rng = np.random.default_rng(12)
        src = rng.uniform(0.0, 400.0, size=(300, 2))
        dst = _map(known_h, src) + rng.normal(0.0, 0.7, size=(300, 2))
        result = ransac_points(src, dst, RansacParams(max_iters=500, seed=3))
        assert compare_to_truth(result.homography, known_h, 400, 400) < 0.5
        refit = dlt_from_points(src[result.inliers], dst[result.inliers])
        assert compare_to_truth(result.homography, refit, 400, 400) < 0.05

    def test_three_matches_insufficient(self):
        kps = [Keypoint(float(i), float(i)) for i in range(3)]
        matches = [MatchPair(i, i, 0.0) for i in range(3)]
        with pytest.raises(InsufficientPointsError):
            ransac_homography(matches, kps, kps, RansacParams())

    def test_collinear_points_fail(self):
        src = np.array([[float(i), 0.0] for i in range(10)])
        with pytest.raises(EstimationFailedError):
            ransac_points(src, src, RansacParams(max_iters=50))

    def test_from_matches_and_keypoints(self, known_h):
        rng = np.random.default_rng(6)
        src = rng.uniform(0.0, 300.0, size=(30, 2))
        dst = _map(known_h, src)
        kps_a = [Keypoint(float(x), float(y)) for x, y in src]
        # 训练集倒序，检验下标经匹配对正确映射
        kps_b = [Keypoint(float(x), float(y)) for x, y in dst[::-1]]
        matches = [MatchPair(i, 29 - i, 0.0) for i in range(30)]
        h, flags = ransac_homography(matches, kps_a, kps_b, RansacParams(max_iters=200, seed=1))
        np.testing.assert_allclose(h.h, known_h.h, atol=1e-6)
        assert flags.all()

    def test_required_iterations_bound(self):
        assert required_iterations(1.0, 0.995, 2000) == 0
        assert required_iterations(0.0, 0.995, 2000) == 2000
        n = required_iterations(0.5, 0.99, 2000)
        assert 1 - (1 - 0.5**4) ** n >= 0.99


# ---------------------------------------------------------------------------
# Supporting numerics
# ---------------------------------------------------------------------------


class TestSupport:

    def test_jacobi_diagonal(self):
        vals, vecs = jacobi_eigh(np.diag([3.0, 1.0, 2.0]))
        np.testing.assert_allclose(vals, [3.0, 1.0, 2.0])
        np.testing.assert_allclose(np.abs(vecs), np.eye(3))

    def test_jacobi_reconstructs_symmetric_matrix(self):
        rng = np.random.default_rng(8)
        a = rng.normal(size=(9, 9))
        s = a @ a.T
        vals, vecs = jacobi_eigh(s)
        np.testing.assert_allclose(vecs @ np.diag(vals) @ vecs.T, s, atol=1e-8)
        np.testing.assert_allclose(vecs.T @ vecs, np.eye(9), atol=1e-10)

    def test_splitmix_reference_sequence(self):
        # SplitMix64 种子 0 的公开参考输出
        rng = SplitMix64(0)
        assert rng.next_u64() == 0xE220A8397B1DCDAF
        assert rng.next_u64() == 0x6E789E6AA1B965F4

    def test_next_below_range(self):
        rng = SplitMix64(42)
        assert all(0 <= rng.next_below(7) < 7 for _ in range(1000))

    def test_mix_seed_depends_on_every_part(self):
        assert mix_seed(1, "a") == mix_seed(1, "a")
        assert mix_seed(1, "a") != mix_seed(1, "b")
        assert mix_seed(1, "a") != mix_seed(2, "a")


class TestGroundTruth:

    def test_one_pixel_translation_error(self):
        err = compare_to_truth(Homography.translation(1, 0), Homography.identity(), 100, 80)
        assert err == pytest.approx(1.0)

    def test_text_round_trip(self, tmp_path, known_h):
        path = tmp_path / "H1to2p"
        write_homography_file(path, known_h)
        assert read_homography_file(path) == known_h

    def test_oxford_style_text(self):
        h = parse_homography_text("1 0 5\n0 1 -2\n0 0 1\n")
        assert project(h, 0, 0) == (5.0, -2.0)

    def test_wrong_token_count(self):
        with pytest.raises(FormatError):
            parse_homography_text("1 0 0 0 1 0 0 0")
