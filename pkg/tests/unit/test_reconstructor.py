"""
Unit tests for the sequence reconstructor
"""

from unittest.mock import patch

import numpy as np
import pytest

from common.enums import StepStatus
from common.exceptions import (
    EmptyInput,
    InsufficientLines,
    NearParallel,
    NonPositiveDepth,
    ValidationError,
)
from config.settings import Settings
from estimation.vanishing_point import analytic_vp
from geometry.camera import Camera, project
from geometry.homogeneous import HomPoint2, canonical_distance
from reconstruction.models import Track
from reconstruction.reconstructor import Reconstructor, anchor, reconstruct_sequence, step
from simulation.simulation_engine import simulate
from tests.fixtures.scene_fixtures import REFERENCE_WAYPOINTS, SceneFactory
from tests.test_utils import tracks_from_trajectories, translate

CLOUD = np.array([
    [0.0, 10.0, 20.0],
    [1.0, 9.0, 21.0],
    [-1.0, 11.0, 19.0],
    [0.5, 10.5, 22.0],
    [2.0, 8.0, 20.0],
])


def _max_scaled_deviation(cam, recon_track, truth_points):
    """Largest |recon - (f / Z0) * truth| over a track"""
    scale = cam.f / truth_points[0, 2]
    return float(np.max(np.abs(recon_track.points - scale * truth_points)))


class TestAnchorAndStep:
    """Test the per-track primitives"""

    @pytest.mark.parametrize("f, obs, expected", [
        (1.0, (0.0, 0.0), (0.0, 0.0, 1.0)),
        (1.0, (0.0, 0.5), (0.0, 0.5, 1.0)),
        (2.0, (3.0, -1.0), (3.0, -1.0, 2.0)),
    ])
    def test_anchor(self, f, obs, expected):
        np.testing.assert_array_equal(anchor(Camera(f=f), obs), expected)

    def test_worked_step(self):
        """Test the step (0,10,20) -> (0,8,24) from anchor (0,0.5,1)"""
        cam = Camera(f=1.0)
        result = step(cam, (0.0, 0.5, 1.0), (0.0, 1.0 / 3.0), analytic_vp(cam, (0.0, -2.0, 4.0)))
        assert result.status is StepStatus.OK
        np.testing.assert_allclose(result.point, [0.0, 0.4, 1.2], atol=1e-14)

    def test_stationary_observation(self):
        """Test that an unmoved observation returns the current point"""
        cam = Camera(f=1.0)
        current = np.array([0.2, 0.1, 2.0])
        result = step(cam, current, project(cam, current), HomPoint2(1.0, 0.0, 0.0))
        assert result.status is StepStatus.STATIONARY
        np.testing.assert_array_equal(result.point, current)
        assert result.d_X == 0.0

    def test_motion_along_projection_ray(self):
        """Test that a vanishing point on the observation's own ray is rejected, not stationary"""
        cam = Camera(f=1.0)
        with pytest.raises(NearParallel):
            step(cam, (0.2, 0.1, 2.0), (0.1, 0.05), HomPoint2(0.1, 0.05, 1.0))

    def test_current_behind_camera(self):
        with pytest.raises(NonPositiveDepth):
            step(Camera(), (0.0, 0.0, -1.0), (0.0, 0.0), HomPoint2(1.0, 0.0, 0.0))


class TestReconstructSequence:
    """Test reconstruct_sequence"""

    def test_reference_scene_is_similar_to_truth(self, reference_scene, reference_simulation, reference_reconstruction):
        """Test that every track equals f / Z0 times its true trajectory"""
        cam = reference_scene.camera
        assert len(reference_reconstruction.tracks) == 200
        assert reference_reconstruction.truncated_tracks() == []
        assert sorted(reference_reconstruction.interval_vps) == [(1, 0), (1, 1), (1, 2)]
        assert reference_reconstruction.interval_failures == {}

        for track in reference_reconstruction.tracks:
            assert [s.status for s in track.steps] == [StepStatus.OK] * 3
            truth = reference_simulation.truth[track.id]
            assert _max_scaled_deviation(cam, track, truth.points) <= 1e-9

    def test_anchors_lie_on_image_plane(self, reference_reconstruction):
        _, anchors = reference_reconstruction.anchors()
        np.testing.assert_array_equal(anchors[:, 2], np.ones(len(anchors)))

    def test_interval_vps_match_translation(self, reference_scene, reference_reconstruction):
        deltas = np.diff(np.array(REFERENCE_WAYPOINTS), axis=0)
        for interval, delta in enumerate(deltas):
            estimate = reference_reconstruction.interval_vps[(1, interval)]
            assert canonical_distance(estimate.vp, analytic_vp(reference_scene.camera, delta)) <= 1e-9

    def test_single_track(self):
        """Test that one moving track cannot define a vanishing point"""
        cam = Camera(f=1.0)
        tracks = [Track(1, 1, [0, 1], [(0.0, 0.5), (0.0, 1.0 / 3.0)])]
        recon = reconstruct_sequence(cam, tracks)

        track = recon.track(1)
        assert len(track.frames) == 1
        np.testing.assert_array_equal(track.anchor, [0.0, 0.5, 1.0])
        assert track.failure is StepStatus.INSUFFICIENT_LINES
        assert recon.interval_failures == {(1, 0): StepStatus.INSUFFICIENT_LINES}
        assert recon.is_geometric_failure

    def test_coincident_motion_lines(self):
        """Test that tracks sliding along one image line give a degenerate bundle"""
        tracks = [
            Track(1, 1, [0, 1], [(0.0, 0.0), (0.1, 0.1)]),
            Track(2, 1, [0, 1], [(0.2, 0.2), (0.3, 0.3)]),
        ]
        recon = reconstruct_sequence(Camera(), tracks)
        assert recon.interval_failures == {(1, 0): StepStatus.DEGENERATE_BUNDLE}
        assert all(t.failure is StepStatus.DEGENERATE_BUNDLE for t in recon.tracks)

    def test_stationary_object(self):
        """Test that an unmoving object keeps every track at its anchor"""
        cam = Camera(f=1.0)
        trajectories = translate(CLOUD, [REFERENCE_WAYPOINTS[0]] * 3)
        recon = reconstruct_sequence(cam, tracks_from_trajectories(cam, trajectories))

        assert recon.interval_vps == {}
        assert recon.interval_failures == {}
        assert not recon.is_geometric_failure
        for track in recon.tracks:
            assert [s.status for s in track.steps] == [StepStatus.STATIONARY] * 2
            np.testing.assert_array_equal(track.points, np.repeat(track.anchor[None, :], 3, axis=0))

    def test_motion_along_projection_ray_truncates(self):
        """Test that a keypoint moving along its own ray is truncated, not given a wrong depth"""
        cam = Camera(f=1.0)
        cloud = np.array([[0.0, 0.0, 10.0], [1.0, 0.0, 10.0], [0.0, 1.0, 10.0], [1.0, 1.0, 12.0]])
        trajectories = translate(cloud, [(0.0, 0.0, 0.0), (0.0, 0.0, 4.0)])
        recon = reconstruct_sequence(cam, tracks_from_trajectories(cam, trajectories))

        on_axis = recon.track(0)
        assert on_axis.failure is StepStatus.NEAR_PARALLEL
        assert len(on_axis.frames) == 1
        for track_id in (1, 2, 3):
            track = recon.track(track_id)
            assert not track.truncated
            assert _max_scaled_deviation(cam, track, trajectories[track_id]) <= 1e-12

    def test_late_track_is_anchored_at_its_first_frame(self):
        cam = Camera(f=1.0)
        trajectories = translate(CLOUD, REFERENCE_WAYPOINTS[:3])
        trajectories[4] = trajectories[4][1:]
        tracks = tracks_from_trajectories(cam, trajectories, first_frames=[0, 0, 0, 0, 1])
        recon = reconstruct_sequence(cam, tracks)

        late = recon.track(4)
        assert late.frames.tolist() == [1, 2]
        assert late.anchor[2] == cam.f
        assert _max_scaled_deviation(cam, late, trajectories[4]) <= 1e-9

    def test_coplanar_cohort_shares_depth(self):
        """Test that keypoints starting at one depth keep one reconstructed depth in every frame"""
        cam = Camera(f=1.0)
        cohort = np.array([[x, y, 20.0] for x in (-3.0, -1.0, 0.5, 2.0) for y in (8.0, 10.0, 12.5)])
        trajectories = translate(np.vstack([cohort, CLOUD[1:4]]), REFERENCE_WAYPOINTS)
        recon = reconstruct_sequence(cam, tracks_from_trajectories(cam, trajectories))

        assert recon.truncated_tracks() == []
        for frame in range(len(REFERENCE_WAYPOINTS)):
            depths = np.array([recon.track(i).point_at(frame)[2] for i in range(len(cohort))])
            assert np.ptp(depths) <= 1e-9
            assert depths[0] == pytest.approx(cam.f * trajectories[0][frame, 2] / 20.0, rel=1e-9)

    def test_objects_are_reconstructed_independently(self):
        """Test one vanishing point per object and interval"""
        cam = Camera(f=1.0)
        first = tracks_from_trajectories(cam, translate(CLOUD, [(0.0, 0.0, 0.0), (0.0, -2.0, 4.0)]), object_id=1)
        second = tracks_from_trajectories(cam, translate(CLOUD + [0.0, -20.0, 5.0], [(0.0, 0.0, 0.0), (3.0, 0.0, 0.0)]),
                                          object_id=2)
        for track in second:
            track.id += 100

        recon = reconstruct_sequence(cam, first + second)
        assert sorted(recon.interval_vps) == [(1, 0), (2, 0)]
        assert canonical_distance(recon.interval_vps[(1, 0)].vp, analytic_vp(cam, (0.0, -2.0, 4.0))) <= 1e-9
        assert recon.interval_vps[(2, 0)].is_ideal
        assert recon.truncated_tracks() == []

    def test_input_order_does_not_matter(self, reference_scene, reference_simulation):
        forward = reconstruct_sequence(reference_scene.camera, reference_simulation.tracks)
        backward = reconstruct_sequence(reference_scene.camera, list(reversed(reference_simulation.tracks)))
        for a, b in zip(forward.tracks, backward.tracks):
            assert a.id == b.id
            np.testing.assert_array_equal(a.points, b.points)

    def test_sequence_step_matches_step(self, reference_scene, reference_simulation, reference_reconstruction):
        """Test that the batched walk agrees with the single-track step"""
        cam = reference_scene.camera
        vp = reference_reconstruction.interval_vps[(1, 0)].vp
        for track in reference_simulation.tracks[:10]:
            single = step(cam, anchor(cam, track.point_at(0)), track.point_at(1), vp)
            np.testing.assert_allclose(reference_reconstruction.track(track.id).point_at(1), single.point, atol=1e-14)

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            reconstruct_sequence(Camera(), [])

    def test_duplicate_track_ids(self):
        tracks = [Track(1, 1, [0, 1], [(0.0, 0.0), (0.1, 0.0)]), Track(1, 1, [0, 1], [(0.2, 0.0), (0.3, 0.0)])]
        with pytest.raises(ValidationError):
            reconstruct_sequence(Camera(), tracks)


class TestReconstructor:
    """Test the settings-driven wrapper"""

    @pytest.fixture
    def reconstructor(self, test_config):
        return Reconstructor(Settings(test_config))

    def test_uses_configured_tolerances(self, test_config):
        test_config = dict(test_config, geometry=dict(test_config['geometry'], eps_parallel=1e-3))
        reconstructor = Reconstructor(Settings(test_config))
        assert reconstructor.eps_parallel == 1e-3
        assert reconstructor.eps_motion == 1e-9

    def test_defaults_without_settings(self):
        assert Reconstructor().eps_parallel == 1e-6

    def test_reconstruct_passes_tolerances(self, test_config):
        test_config = dict(test_config, geometry=dict(test_config['geometry'], eps_motion=1e-7))
        reconstructor = Reconstructor(Settings(test_config))
        with patch('reconstruction.reconstructor.reconstruct_sequence') as mock_reconstruct:
            reconstructor.reconstruct(Camera(), [])

        mock_reconstruct.assert_called_once_with(
            Camera(), [], eps_motion=1e-7, eps_parallel=1e-6, degenerate_eigenvalue=1e-18, ideal_tolerance=1e-10
        )

    def test_reconstruct_matches_function(self, reconstructor, reference_scene, reference_simulation, reference_reconstruction):
        recon = reconstructor.reconstruct(reference_scene.camera, reference_simulation.tracks)
        for a, b in zip(recon.tracks, reference_reconstruction.tracks):
            np.testing.assert_array_equal(a.points, b.points)

    def test_estimate_interval(self, reconstructor, reference_scene, reference_simulation):
        estimate = reconstructor.estimate_interval(reference_simulation.tracks, 1, 2)
        assert estimate.n_lines == 200
        assert canonical_distance(estimate.vp, analytic_vp(reference_scene.camera, (2.0, -3.0, 4.0))) <= 1e-9

    def test_estimate_interval_without_motion(self, reconstructor):
        with pytest.raises(InsufficientLines):
            reconstructor.estimate_interval([Track(1, 1, [0, 1], [(0.0, 0.0), (0.1, 0.0)])], 1, 0)

    def test_cross_check_matches_estimate(self, reconstructor, reference_simulation):
        estimate = reconstructor.estimate_interval(reference_simulation.tracks, 1, 2)
        pairwise = reconstructor.cross_check_interval(reference_simulation.tracks, 1, 2)
        assert canonical_distance(estimate.vp, pairwise) <= 1e-9

    def test_cross_check_passes_coincident_tolerance(self, test_config, reference_simulation):
        test_config = dict(test_config, geometry=dict(test_config['geometry'], coincident_tolerance=1e-8))
        reconstructor = Reconstructor(Settings(test_config))
        assert reconstructor.coincident_tolerance == 1e-8

        with patch('reconstruction.reconstructor.estimate_vp_pairwise') as mock_pairwise:
            reconstructor.cross_check_interval(reference_simulation.tracks, 1, 0)

        lines, ideal_tolerance, coincident_tolerance = mock_pairwise.call_args.args
        assert len(lines) == 200
        assert ideal_tolerance == 1e-10
        assert coincident_tolerance == 1e-8


def test_lateral_scene_uses_ideal_points():
    """Translation parallel to the image plane gives points at infinity"""
    spec = SceneFactory.lateral_scene()
    recon = reconstruct_sequence(spec.camera, simulate(spec).tracks)
    assert all(estimate.is_ideal for estimate in recon.interval_vps.values())
    assert recon.truncated_tracks() == []
