"""
Test utilities for building settings and small track sets
"""

from typing import Iterable, List, Sequence, Tuple

import numpy as np

from geometry.camera import Camera, project_many
from reconstruction.models import Track


def create_test_config():
    """Create a complete test configuration for every settings group"""
    return {
        'geometry': {
            'eps_motion': 1e-9,
            'eps_parallel': 1e-6,
            'coincident_tolerance': 1e-12,
            'ideal_tolerance': 1e-10,
            'degenerate_eigenvalue': 1e-18
        },
        'simulation': {
            'default_radius': 2.0,
            'default_n_points': 200,
            'default_focal_length': 1.0,
            'track_id_offset': 100000
        },
        'verification': {
            'scale_tolerance': 1e-9,
            'rmse_tolerance': 1e-9,
            'depth_tolerance': 1e-12
        },
        'export': {
            'float_format': '%.17g',
            'ply_color': [255, 255, 255],
            'anchor_color': [255, 0, 0]
        }
    }


def tracks_from_trajectories(cam: Camera, trajectories: Sequence[np.ndarray], object_id: int = 1,
                             first_frames: Iterable[int] = None) -> List[Track]:
    """One Track per (n_frames, 3) trajectory, ids 0..N-1, exact projections"""
    first_frames = list(first_frames) if first_frames is not None else [0] * len(trajectories)
    return [
        Track(track_id, object_id, np.arange(start, start + len(points)), project_many(cam, points))
        for track_id, (points, start) in enumerate(zip(trajectories, first_frames))
    ]


def translate(points: np.ndarray, waypoints: Sequence[Tuple[float, float, float]]) -> List[np.ndarray]:
    """Trajectories of every point under a waypoint translation, (n_frames, 3) each"""
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    waypoints = np.asarray(waypoints, dtype=np.float64).reshape(-1, 3)
    offsets = waypoints - waypoints[0]
    return [point + offsets for point in points]
