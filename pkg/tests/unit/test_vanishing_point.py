"""
Unit tests for vanishing point estimation
"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from common.exceptions import DegenerateBundle, InsufficientLines, ValidationError
from estimation.vanishing_point import (
    MotionPair,
    VpEstimate,
    analytic_vp,
    estimate_vp,
    estimate_vp_from_rows,
    estimate_vp_pairwise,
    motion_lines,
)
from geometry.camera import Camera
from geometry.homogeneous import HomPoint2, canonical_distance, image_line_through, intersect_lines
from reconstruction.reconstructor import interval_pairs
from simulation.simulation_engine import simulate
from tests.fixtures.scene_fixtures import SceneFactory


def _lines(*segments):
    """(id, line) pairs for point-pair segments, ids in order"""
    return [(i, image_line_through(p, q)) for i, (p, q) in enumerate(segments)]


def _bundle_pairs(vp, n_lines: int, sigma: float, seed: int):
    """Point pairs on lines through `vp` at evenly spread angles, perturbed by sigma"""
    rng = np.random.default_rng(seed)
    vp = np.asarray(vp, dtype=np.float64)
    pairs = []
    for i, angle in enumerate(np.linspace(0.0, math.pi, n_lines, endpoint=False)):
        direction = np.array([math.cos(angle), math.sin(angle)])
        p = vp + direction + sigma * rng.standard_normal(2)
        q = vp + 2.0 * direction + sigma * rng.standard_normal(2)
        pairs.append(MotionPair(i, p, q))
    return pairs


def _noisy_bundle(vp, n_lines: int, sigma: float, seed: int):
    lines, _ = motion_lines(_bundle_pairs(vp, n_lines, sigma, seed))
    return lines


class TestMotionLines:
    """Test motion_lines"""

    def test_drops_stationary_pairs(self):
        """Test two moving pairs and one stationary pair"""
        pairs = [
            MotionPair(1, (0.0, 0.0), (1.0, 0.0)),
            MotionPair(2, (0.5, 0.5), (0.5, 0.5)),
            MotionPair(3, (0.0, 1.0), (2.0, 2.0)),
        ]
        lines, dropped = motion_lines(pairs)
        assert [track_id for track_id, _ in lines] == [1, 3]
        assert dropped == [2]

    def test_all_stationary(self):
        pairs = [MotionPair(i, (0.1 * i, 0.0), (0.1 * i, 0.0)) for i in range(4)]
        lines, dropped = motion_lines(pairs)
        assert lines == []
        assert dropped == [0, 1, 2, 3]

    def test_rejects_non_finite_pair(self):
        with pytest.raises(ValidationError):
            MotionPair(1, (0.0, float('nan')), (1.0, 0.0))

    def test_sphere_cloud_lines_are_concurrent(self):
        """Test that every line of a translated cloud passes through the analytic vanishing point"""
        spec = SceneFactory.reference_scene()
        result = simulate(spec)
        lines, dropped = motion_lines(interval_pairs(result.tracks, 1, 0))

        assert len(lines) == 200
        assert dropped == []
        vp = analytic_vp(spec.camera, (0.0, -2.0, 4.0)).to_euclidean()
        assert max(line.distance_to(vp) for _, line in lines) <= 1e-12


class TestEstimateVp:
    """Test the total-least-squares estimator"""

    def test_two_lines_equal_intersection(self):
        """Test y=0 and the line through (0,1),(2,2)"""
        lines = _lines(((0.0, 0.0), (1.0, 0.0)), ((0.0, 1.0), (2.0, 2.0)))
        estimate = estimate_vp(lines)

        np.testing.assert_allclose(estimate.vp.to_euclidean(), [-2.0, 0.0], atol=1e-12)
        assert canonical_distance(estimate.vp, intersect_lines(lines[0][1], lines[1][1])) <= 1e-12
        assert estimate.n_lines == 2
        assert estimate.rms_residual <= 1e-12
        assert not estimate.is_ideal

    def test_parallel_bundle_is_ideal(self):
        """Test y=x, y=x-2 and y=x+1"""
        lines = _lines(((0.0, 0.0), (1.0, 1.0)), ((2.0, 0.0), (3.0, 1.0)), ((0.0, 1.0), (1.0, 2.0)))
        estimate = estimate_vp(lines)

        assert estimate.is_ideal
        np.testing.assert_allclose(estimate.vp.vector, np.array([1.0, 1.0, 0.0]) / math.sqrt(2.0), atol=1e-12)
        assert estimate.max_residual <= 1e-12

    def test_insufficient_lines(self):
        with pytest.raises(InsufficientLines):
            estimate_vp(_lines(((0.0, 0.0), (1.0, 0.0))))
        with pytest.raises(InsufficientLines):
            estimate_vp([])

    def test_degenerate_bundle(self):
        """Test that two copies of one line cannot define a vanishing point"""
        line = image_line_through((0.0, 1.0), (2.0, 2.0))
        with pytest.raises(DegenerateBundle):
            estimate_vp([(1, line), (2, line)])

    def test_input_order_does_not_matter(self):
        """Test that lines are stacked in id order"""
        lines = _noisy_bundle((0.3, -0.2), 20, 1e-3, seed=5)
        forward = estimate_vp(lines)
        backward = estimate_vp(list(reversed(lines)))
        np.testing.assert_array_equal(forward.vp.vector, backward.vp.vector)
        assert forward.rms_residual == backward.rms_residual

    def test_from_rows_records_singular_values(self):
        L = np.array([line.vector for _, line in _noisy_bundle((0.3, -0.2), 10, 0.0, seed=1)])
        estimate = estimate_vp_from_rows(L)
        assert len(estimate.singular_values) == 3
        assert estimate.singular_values[0] >= estimate.singular_values[1] >= estimate.singular_values[2]
        assert estimate.singular_values[2] <= 1e-12

    def test_exact_sphere_bundle_matches_analytic(self):
        """Test 200 concurrent lines from an exact translated projection"""
        spec = SceneFactory.reference_scene()
        lines, _ = motion_lines(interval_pairs(simulate(spec).tracks, 1, 0))
        estimate = estimate_vp(lines)

        assert estimate.rms_residual <= 1e-10
        assert canonical_distance(estimate.vp, analytic_vp(spec.camera, (0.0, -2.0, 4.0))) <= 1e-9

    def test_noisy_bundle_residual_grows_with_noise(self):
        small = estimate_vp(_noisy_bundle((0.3, -0.2), 50, 1e-4, seed=3))
        large = estimate_vp(_noisy_bundle((0.3, -0.2), 50, 1e-2, seed=3))
        assert small.rms_residual < large.rms_residual

    def test_dict_round_trip(self):
        estimate = estimate_vp(_noisy_bundle((0.3, -0.2), 10, 1e-3, seed=2))
        restored = VpEstimate.from_dict(estimate.to_dict())
        np.testing.assert_array_equal(restored.vp.vector, estimate.vp.vector)
        assert restored.n_lines == estimate.n_lines
        assert restored.rms_residual == estimate.rms_residual
        assert restored.singular_values == estimate.singular_values

    def test_direction(self):
        """Test the 3D direction of a vanishing point"""
        estimate = VpEstimate(vp=analytic_vp(Camera(f=2.0), (0.0, -2.0, 4.0)), n_lines=2,
                              rms_residual=0.0, max_residual=0.0)
        delta = np.array([0.0, -2.0, 4.0]) / math.sqrt(20.0)
        assert abs(float(estimate.direction(Camera(f=2.0)) @ delta)) == pytest.approx(1.0, abs=1e-15)


class TestEstimateVpPairwise:
    """Test the brute-force cross-check"""

    def test_two_lines_equal_intersection(self):
        lines = _lines(((0.0, 0.0), (1.0, 0.0)), ((0.0, 1.0), (2.0, 2.0)))
        pairwise = estimate_vp_pairwise(lines)
        assert canonical_distance(pairwise, intersect_lines(lines[0][1], lines[1][1])) <= 1e-12

    def test_three_concurrent_lines_match_estimate(self):
        lines = _lines(((1.0, 0.0), (2.0, 0.0)), ((0.0, 1.0), (0.0, 2.0)), ((1.0, 1.0), (2.0, 2.0)))
        assert canonical_distance(estimate_vp_pairwise(lines), estimate_vp(lines).vp) <= 1e-9

    def test_parallel_bundle(self):
        lines = _lines(((0.0, 0.0), (1.0, 1.0)), ((2.0, 0.0), (3.0, 1.0)), ((0.0, 1.0), (1.0, 2.0)))
        pairwise = estimate_vp_pairwise(lines)
        assert pairwise.is_ideal()
        np.testing.assert_allclose(pairwise.vector, np.array([1.0, 1.0, 0.0]) / math.sqrt(2.0), atol=1e-12)

    def test_noisy_bundle_agrees_with_estimate(self):
        """Test that both estimators land within a few sigma of the true point"""
        sigma = 1e-3
        lines = _noisy_bundle((0.3, -0.2), 50, sigma, seed=11)
        tls = estimate_vp(lines).vp.to_euclidean()
        pairwise = estimate_vp_pairwise(lines).to_euclidean()

        assert np.linalg.norm(tls - pairwise) <= 5 * sigma
        assert np.linalg.norm(tls - [0.3, -0.2]) <= 5 * sigma

    def test_only_coincident_lines(self):
        line = image_line_through((0.0, 1.0), (2.0, 2.0))
        with pytest.raises(DegenerateBundle):
            estimate_vp_pairwise([(1, line), (2, line)])

    def test_insufficient_lines(self):
        with pytest.raises(InsufficientLines):
            estimate_vp_pairwise(_lines(((0.0, 0.0), (1.0, 0.0))))


vp_coordinate = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False)
angle = st.floats(min_value=-math.pi, max_value=math.pi, allow_nan=False)
scale = st.floats(min_value=0.1, max_value=10.0, allow_nan=False)


class TestVpProperties:
    """Test how the estimate transforms with the image"""

    @given(x=vp_coordinate, y=vp_coordinate, theta=angle)
    def test_rotation_about_principal_point(self, x, y, theta):
        """Test that rotating every image point rotates the vanishing point by the same angle"""
        c, s = math.cos(theta), math.sin(theta)
        R = np.array([[c, -s], [s, c]])
        pairs = _bundle_pairs((x, y), 12, 1e-3, seed=4)
        rotated = [MotionPair(pair.track_id, R @ pair.p, R @ pair.q) for pair in pairs]

        original = estimate_vp(motion_lines(pairs)[0]).vp.vector
        expected = HomPoint2.from_vector(np.concatenate([R @ original[:2], original[2:]]))
        assert canonical_distance(estimate_vp(motion_lines(rotated)[0]).vp, expected) <= 1e-9

    @given(x=vp_coordinate, y=vp_coordinate, s=scale)
    def test_uniform_scaling(self, x, y, s):
        """Test that scaling image coordinates by s scales a finite vanishing point by s"""
        pairs = _bundle_pairs((x, y), 8, 0.0, seed=0)
        scaled = [MotionPair(pair.track_id, s * pair.p, s * pair.q) for pair in pairs]

        original = estimate_vp(motion_lines(pairs)[0])
        estimate = estimate_vp(motion_lines(scaled)[0])
        assert not estimate.is_ideal
        np.testing.assert_allclose(estimate.vp.to_euclidean(), s * original.vp.to_euclidean(),
                                   rtol=1e-9, atol=1e-9 * s)

    @given(x=vp_coordinate, y=vp_coordinate, n_lines=st.integers(min_value=3, max_value=8))
    def test_dropping_one_line(self, x, y, n_lines):
        """Test that any single line of an exact bundle can be left out"""
        lines = _noisy_bundle((x, y), n_lines, 0.0, seed=0)
        full = estimate_vp(lines).vp
        for i in range(n_lines):
            assert canonical_distance(estimate_vp(lines[:i] + lines[i + 1:]).vp, full) <= 1e-9


class TestAnalyticVp:
    """Test analytic_vp"""

    def test_reference_translation(self):
        vp = analytic_vp(Camera(f=1.0), (0.0, -2.0, 4.0))
        np.testing.assert_allclose(vp.vector, np.array([0.0, 1.0, -2.0]) / math.sqrt(5.0), atol=1e-15)
        np.testing.assert_allclose(vp.to_euclidean(), [0.0, -0.5], atol=1e-15)

    def test_image_parallel_translation_is_ideal(self):
        assert analytic_vp(Camera(f=1.0), (1.0, 0.0, 0.0)).is_ideal()

    def test_zero_translation(self):
        with pytest.raises(ValidationError):
            analytic_vp(Camera(), (0.0, 0.0, 0.0))


class TestRandomTranslationScenes:
    """Estimator, brute-force cross-check and analytic point agree on exact data"""

    def test_hundred_seeded_scenes(self):
        rng = np.random.default_rng(20240607)
        for _ in range(100):
            spec, delta = SceneFactory.translation_scene(rng)
            lines, dropped = motion_lines(interval_pairs(simulate(spec).tracks, 1, 0))
            assert dropped == []

            estimate = estimate_vp(lines)
            expected = analytic_vp(spec.camera, delta)
            assert estimate.rms_residual <= 1e-10
            assert canonical_distance(estimate.vp, expected) <= 1e-9
            assert canonical_distance(estimate.vp, estimate_vp_pairwise(lines)) <= 1e-9
