"""
Scene fixtures for testing
Provides ready-made synthetic scenes and their expected motion
"""

import math
from typing import Sequence, Tuple

import numpy as np
from scipy.spatial.transform import Rotation

from geometry.camera import Camera
from simulation.scene import (
    KeyframeShape,
    ObjectSpec,
    PointCloudShape,
    SceneSpec,
    SphereShape,
    make_sphere_cloud,
)

# Sphere reference point trajectory of the reference experiment
REFERENCE_WAYPOINTS = [(0.0, 10.0, 20.0), (0.0, 8.0, 24.0), (2.0, 8.0, 22.0), (4.0, 5.0, 26.0)]

# Translation parallel to the image plane in every interval
LATERAL_WAYPOINTS = [(0.0, 2.0, 20.0), (1.0, 2.0, 20.0), (2.0, 2.5, 20.0), (3.0, 3.0, 20.0)]


class SceneFactory:
    """Factory for creating test scenes"""

    @staticmethod
    def sphere_scene(waypoints: Sequence[Tuple[float, float, float]], noise_sigma: float = 0.0,
                     seed: int = 0, n_points: int = 200, radius: float = 2.0, f: float = 1.0,
                     object_id: int = 1) -> SceneSpec:
        """Single sphere object whose center follows the waypoints"""
        return SceneSpec(
            camera=Camera(f=f),
            objects=[ObjectSpec(
                object_id=object_id,
                shape=SphereShape(center=waypoints[0], radius=radius, n_points=n_points),
                waypoints=waypoints,
            )],
            n_frames=len(waypoints),
            noise_sigma=noise_sigma,
            seed=seed,
        )

    @staticmethod
    def reference_scene(noise_sigma: float = 0.0, seed: int = 0, n_points: int = 200) -> SceneSpec:
        return SceneFactory.sphere_scene(REFERENCE_WAYPOINTS, noise_sigma=noise_sigma, seed=seed, n_points=n_points)

    @staticmethod
    def lateral_scene(noise_sigma: float = 0.0, seed: int = 0) -> SceneSpec:
        return SceneFactory.sphere_scene(LATERAL_WAYPOINTS, noise_sigma=noise_sigma, seed=seed)

    @staticmethod
    def rotating_scene(degrees_per_frame: float = 15.0, axis=(0.0, 1.0, 0.0), n_points: int = 200) -> SceneSpec:
        """Reference trajectory with the sphere spinning about its center, given as explicit keyframes"""
        center = np.array(REFERENCE_WAYPOINTS[0])
        base = make_sphere_cloud(center, 2.0, n_points) - center
        axis = np.asarray(axis, dtype=np.float64) / np.linalg.norm(axis)
        frames = [
            Rotation.from_rotvec(axis * math.radians(degrees_per_frame * i)).apply(base) + np.array(waypoint)
            for i, waypoint in enumerate(REFERENCE_WAYPOINTS)
        ]
        return SceneSpec(
            camera=Camera(f=1.0),
            objects=[ObjectSpec(object_id=1, shape=KeyframeShape(frames=frames))],
            n_frames=len(frames),
        )

    @staticmethod
    def translation_scene(rng: np.random.Generator, n_points: int = 20) -> Tuple[SceneSpec, np.ndarray]:
        """
        Random two-frame translation of a point cloud in front of the camera.

        Returns the scene and its translation; |dz| >= 0.5 keeps the
        vanishing point well away from infinity.
        """
        points = np.column_stack([
            rng.uniform(-5.0, 5.0, n_points),
            rng.uniform(-5.0, 5.0, n_points),
            rng.uniform(20.0, 30.0, n_points),
        ])
        delta = rng.uniform(-2.0, 2.0, 3)
        delta[2] = rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0)
        spec = SceneSpec(
            camera=Camera(f=float(rng.uniform(0.5, 2.0))),
            objects=[ObjectSpec(object_id=1, shape=PointCloudShape(points=points),
                                waypoints=[(0.0, 0.0, 0.0), tuple(delta)])],
            n_frames=2,
        )
        return spec, delta

    @staticmethod
    def large_scene(n_points: int = 1000, n_frames: int = 100) -> SceneSpec:
        """Long smooth trajectory for timing runs"""
        i = np.arange(n_frames, dtype=np.float64)
        waypoints = np.column_stack([0.1 * i, 0.05 * np.sin(0.3 * i), 50.0 + 0.2 * i])
        return SceneSpec(
            camera=Camera(f=1.0),
            objects=[ObjectSpec(
                object_id=1,
                shape=SphereShape(center=waypoints[0], radius=5.0, n_points=n_points),
                waypoints=waypoints,
            )],
            n_frames=n_frames,
        )
