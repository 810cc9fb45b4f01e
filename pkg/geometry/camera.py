"""
Pinhole Camera Model

The projection center L sits at the origin and the image plane is Z = f.
Image coordinates handled by this package are relative to the principal
point; `Camera.to_relative` / `Camera.to_pixel` convert at the boundary.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from common.exceptions import NonPositiveDepth, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Camera:
    """Static pinhole camera (focal length, principal point, optional bounds)"""
    f: float = 1.0
    principal_point: Tuple[float, float] = (0.0, 0.0)
    image_half_extent: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        issues = []
        if not math.isfinite(self.f) or self.f <= 0:
            issues.append(f"focal length must be positive, got {self.f}")
        if len(self.principal_point) != 2 or not all(math.isfinite(c) for c in self.principal_point):
            issues.append("principal point must be two finite numbers")
        if self.image_half_extent is not None:
            if len(self.image_half_extent) != 2 or any(h <= 0 for h in self.image_half_extent):
                issues.append("image half extent must be two positive numbers")
        if issues:
            raise ValidationError(issues)

        # Normalise to plain float tuples so the dataclass stays hashable
        object.__setattr__(self, 'f', float(self.f))
        object.__setattr__(self, 'principal_point', tuple(float(c) for c in self.principal_point))
        if self.image_half_extent is not None:
            object.__setattr__(self, 'image_half_extent', tuple(float(h) for h in self.image_half_extent))

    @property
    def projection_center(self) -> np.ndarray:
        """L, always the origin"""
        return np.zeros(3)

    def to_relative(self, pixel) -> np.ndarray:
        """Convert a raw image position to principal-point-relative coordinates"""
        return np.asarray(pixel, dtype=np.float64) - np.asarray(self.principal_point)

    def to_pixel(self, point) -> np.ndarray:
        """Inverse of `to_relative`"""
        return np.asarray(point, dtype=np.float64) + np.asarray(self.principal_point)

    def in_bounds(self, point) -> bool:
        """True if a relative image point lies inside the image (always, when unbounded)"""
        if self.image_half_extent is None:
            return True
        u, v = np.asarray(point, dtype=np.float64)
        hx, hy = self.image_half_extent
        return abs(u) <= hx and abs(v) <= hy

    def to_dict(self) -> dict:
        """Convert to dictionary for serialization"""
        return {
            'focal_length': self.f,
            'principal_point': list(self.principal_point),
            'image_half_extent': list(self.image_half_extent) if self.image_half_extent else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'Camera':
        half_extent = data.get('image_half_extent')
        return cls(
            f=data['focal_length'],
            principal_point=tuple(data.get('principal_point', (0.0, 0.0))),
            image_half_extent=tuple(half_extent) if half_extent else None,
        )


@dataclass(frozen=True, eq=False)
class Ray3:
    """Half line origin + lambda * dir, lambda >= 0"""
    origin: np.ndarray
    dir: np.ndarray

    def __post_init__(self):
        origin = np.asarray(self.origin, dtype=np.float64).reshape(3)
        direction = np.asarray(self.dir, dtype=np.float64).reshape(3)
        if abs(np.linalg.norm(direction) - 1.0) > 1e-12:
            raise ValidationError([f"ray direction must be unit length, got |dir|={np.linalg.norm(direction)}"])
        object.__setattr__(self, 'origin', origin)
        object.__setattr__(self, 'dir', direction)

    def at(self, lam: float) -> np.ndarray:
        return self.origin + lam * self.dir

    def distance_to(self, point) -> float:
        """Distance from a 3D point to the supporting line of the ray"""
        offset = np.asarray(point, dtype=np.float64) - self.origin
        return float(np.linalg.norm(np.cross(offset, self.dir)))


def project(cam: Camera, P) -> np.ndarray:
    """
    Project a 3D point onto the image plane.

    Args:
        cam: Camera
        P: 3D point in camera coordinates

    Returns:
        (f*X/Z, f*Y/Z), principal-point relative

    Raises:
        NonPositiveDepth: if P.Z <= 0
    """
    X, Y, Z = np.asarray(P, dtype=np.float64).reshape(3)
    if not Z > 0:
        raise NonPositiveDepth(f"cannot project point with Z={Z}")
    return np.array([cam.f * X / Z, cam.f * Y / Z])


def project_many(cam: Camera, points: np.ndarray) -> np.ndarray:
    """Vectorised `project` over an (N, 3) array"""
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    if np.any(~(points[:, 2] > 0)):
        raise NonPositiveDepth(f"{int(np.sum(~(points[:, 2] > 0)))} points with Z <= 0")
    return cam.f * points[:, :2] / points[:, 2:3]


def embed(cam: Camera, p) -> np.ndarray:
    """Place a relative image point on the 3D image plane: (u, v, f)"""
    u, v = np.asarray(p, dtype=np.float64).reshape(2)
    return np.array([u, v, cam.f])


def backproject_ray(cam: Camera, p) -> Ray3:
    """Projection ray from L through image point p"""
    v = embed(cam, p)
    return Ray3(origin=np.zeros(3), dir=v / np.linalg.norm(v))


def backproject_dirs(cam: Camera, points: np.ndarray) -> np.ndarray:
    """Unit ray directions for an (N, 2) array of image points"""
    points = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    v = np.column_stack([points, np.full(len(points), cam.f)])
    return v / np.linalg.norm(v, axis=1, keepdims=True)
