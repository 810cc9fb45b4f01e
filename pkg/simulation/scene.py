"""
Synthetic Scene Description

A scene is a static camera plus rigid point-cloud objects, each following a
list of per-frame waypoints (positions of the object's reference point).
Objects may also spin about their reference point, or give explicit
per-frame point lists for motions the translation model does not cover.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Union

import numpy as np
from scipy.spatial.transform import Rotation

from common.enums import ShapeKind, SimulationConstants
from common.exceptions import ValidationError
from geometry.camera import Camera

logger = logging.getLogger(__name__)

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


@dataclass(eq=False)
class SphereShape:
    """Points sampled on a sphere surface"""
    center: np.ndarray
    radius: float = SimulationConstants.DEFAULT_RADIUS
    n_points: int = SimulationConstants.DEFAULT_N_POINTS
    seed: int = SimulationConstants.DEFAULT_SEED
    kind = ShapeKind.SPHERE

    def __post_init__(self):
        self.center = np.asarray(self.center, dtype=np.float64).reshape(3)


@dataclass(eq=False)
class PointCloudShape:
    """Explicit rigid point list, moved by the object's waypoints"""
    points: np.ndarray
    kind = ShapeKind.POINTS

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.float64).reshape(-1, 3)


@dataclass(eq=False)
class KeyframeShape:
    """Explicit point list per frame (point i in every frame is the same keypoint)"""
    frames: List[np.ndarray]
    kind = ShapeKind.KEYFRAMES

    def __post_init__(self):
        self.frames = [np.asarray(f, dtype=np.float64).reshape(-1, 3) for f in self.frames]


Shape = Union[SphereShape, PointCloudShape, KeyframeShape]


@dataclass(eq=False)
class Spin:
    """Constant rotation about the reference point, applied cumulatively per frame"""
    axis: np.ndarray
    degrees_per_frame: float

    def __post_init__(self):
        self.axis = np.asarray(self.axis, dtype=np.float64).reshape(3)

    def rotation_at(self, frame: int) -> Rotation:
        axis = self.axis / np.linalg.norm(self.axis)
        return Rotation.from_rotvec(axis * math.radians(self.degrees_per_frame * frame))


@dataclass(eq=False)
class ObjectSpec:
    """One rigid object of the scene"""
    object_id: int
    shape: Shape
    waypoints: Optional[np.ndarray] = None
    spin: Optional[Spin] = None

    def __post_init__(self):
        if self.waypoints is not None:
            self.waypoints = np.asarray(self.waypoints, dtype=np.float64).reshape(-1, 3)

    @property
    def n_frames(self) -> int:
        if isinstance(self.shape, KeyframeShape):
            return len(self.shape.frames)
        return 0 if self.waypoints is None else len(self.waypoints)

    def validate(self, n_frames: int) -> List[str]:
        issues = []
        name = f"object {self.object_id}"
        if not isinstance(self.object_id, (int, np.integer)) or self.object_id < 0:
            issues.append(f"{name}: object_id must be a non-negative integer")

        if isinstance(self.shape, SphereShape):
            if not self.shape.radius > 0:
                issues.append(f"{name}: radius must be positive")
            if self.shape.n_points < 2:
                issues.append(f"{name}: n_points must be at least 2")
            if not isinstance(self.shape.seed, (int, np.integer)) or not 0 <= self.shape.seed < 2 ** 64:
                issues.append(f"{name}: sphere seed must be an integer in [0, 2^64)")
        elif isinstance(self.shape, PointCloudShape):
            if len(self.shape.points) < 2:
                issues.append(f"{name}: needs at least 2 points")
        elif isinstance(self.shape, KeyframeShape):
            sizes = {len(f) for f in self.shape.frames}
            if len(sizes) > 1:
                issues.append(f"{name}: keyframes must all have the same number of points")
            elif sizes and sizes.pop() < 2:
                issues.append(f"{name}: needs at least 2 points")
            if self.spin is not None:
                issues.append(f"{name}: spin cannot be combined with keyframes")
            if self.waypoints is not None:
                issues.append(f"{name}: waypoints cannot be combined with keyframes")

        if not isinstance(self.shape, KeyframeShape) and self.waypoints is None:
            issues.append(f"{name}: waypoints are required")
        if self.n_frames != n_frames:
            issues.append(f"{name}: has {self.n_frames} frames of motion, scene has {n_frames}")
        if self.spin is not None and not np.linalg.norm(self.spin.axis) > 0:
            issues.append(f"{name}: spin axis must be non-zero")
        return issues


@dataclass(eq=False)
class SceneSpec:
    """Full synthetic experiment description"""
    camera: Camera
    objects: List[ObjectSpec] = field(default_factory=list)
    n_frames: int = 1
    noise_sigma: float = 0.0
    seed: int = SimulationConstants.DEFAULT_SEED

    def validate(self) -> List[str]:
        """Return the list of violated invariants (empty when valid)"""
        issues = []
        if self.n_frames < 1:
            issues.append("n_frames must be at least 1")
        if not self.noise_sigma >= 0:
            issues.append("noise_sigma must be non-negative")
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed < 2 ** 64:
            issues.append("seed must be an integer in [0, 2^64)")
        if not self.objects:
            issues.append("scene has no objects")

        ids = [obj.object_id for obj in self.objects]
        if len(ids) != len(set(ids)):
            issues.append("object ids must be unique")

        for obj in self.objects:
            issues.extend(obj.validate(self.n_frames))
        return issues


def make_sphere_cloud(center, radius: float, n_points: int, seed: int = 0) -> np.ndarray:
    """
    Deterministic Fibonacci-spiral sampling of a sphere surface.

    The seed only turns the spiral about the vertical axis; identical inputs
    give bit-identical output.
    """
    if n_points < 2:
        raise ValidationError([f"n_points must be at least 2, got {n_points}"])
    center = np.asarray(center, dtype=np.float64).reshape(3)
    phase = np.random.default_rng(seed).uniform(0.0, 2.0 * math.pi) if seed else 0.0

    i = np.arange(n_points, dtype=np.float64)
    y = 1.0 - 2.0 * (i + 0.5) / n_points
    ring = np.sqrt(1.0 - y * y)
    theta = GOLDEN_ANGLE * i + phase
    unit = np.column_stack([ring * np.cos(theta), y, ring * np.sin(theta)])
    unit /= np.linalg.norm(unit, axis=1, keepdims=True)
    return center + radius * unit


def base_cloud(obj: ObjectSpec) -> np.ndarray:
    """Object points at frame 0"""
    if isinstance(obj.shape, SphereShape):
        return make_sphere_cloud(obj.shape.center, obj.shape.radius, obj.shape.n_points, obj.shape.seed)
    if isinstance(obj.shape, PointCloudShape):
        return obj.shape.points.copy()
    return obj.shape.frames[0].copy()


def pose_at_frame(obj: ObjectSpec, frame: int, base: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Object points at `frame`.

    Translation-only objects move by waypoints[frame] - waypoints[0]; spinning
    objects are additionally rotated about the current reference point.
    """
    if not 0 <= frame < obj.n_frames:
        raise ValidationError([f"frame {frame} outside object {obj.object_id}'s {obj.n_frames} frames"])
    if isinstance(obj.shape, KeyframeShape):
        return obj.shape.frames[frame].copy()

    base = base_cloud(obj) if base is None else base
    origin = obj.waypoints[0]
    if obj.spin is None:
        return base + (obj.waypoints[frame] - origin)
    return obj.spin.rotation_at(frame).apply(base - origin) + obj.waypoints[frame]
