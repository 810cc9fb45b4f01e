"""
Homogeneous Image-Plane Algebra

Points and lines of the projective image plane, kept in canonical form so
that equality is testable and output is deterministic:

- HomPoint2: unit Euclidean norm, first non-negligible component positive
- HomLine2: unit normal (l1, l2), first non-negligible component positive
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from common.enums import GeometryConstants
from common.exceptions import (
    CoincidentLines,
    DegenerateLine,
    GeometryError,
    ValidationError,
)
from .camera import Camera

logger = logging.getLogger(__name__)


def canonical_sign(v: np.ndarray, tol: float = GeometryConstants.SIGN_TOLERANCE) -> np.ndarray:
    """Flip v so its first component with |c| > tol is positive"""
    for component in v:
        if abs(component) > tol:
            return -v if component < 0 else v
    return v


def canonical_sign_rows(rows: np.ndarray, tol: float = GeometryConstants.SIGN_TOLERANCE) -> np.ndarray:
    """Row-wise `canonical_sign` for an (N, k) array"""
    significant = np.abs(rows) > tol
    first = np.argmax(significant, axis=1)
    lead = rows[np.arange(len(rows)), first]
    flip = np.where(lead < 0, -1.0, 1.0)
    return rows * flip[:, None]


@dataclass(frozen=True)
class HomPoint2:
    """Homogeneous image point (x_h, y_h, w_h); w_h == 0 is a point at infinity"""
    x_h: float
    y_h: float
    w_h: float

    def __post_init__(self):
        if not np.all(np.isfinite(self.vector)) or np.linalg.norm(self.vector) == 0:
            raise ValidationError([f"homogeneous point must be finite and non-zero, got {self.vector}"])

    @classmethod
    def from_vector(cls, v) -> 'HomPoint2':
        x, y, w = np.asarray(v, dtype=np.float64).reshape(3)
        return cls(float(x), float(y), float(w))

    @classmethod
    def from_euclidean(cls, p) -> 'HomPoint2':
        u, v = np.asarray(p, dtype=np.float64).reshape(2)
        return cls(float(u), float(v), 1.0).canonical()

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x_h, self.y_h, self.w_h], dtype=np.float64)

    def canonical(self) -> 'HomPoint2':
        v = self.vector
        return HomPoint2.from_vector(canonical_sign(v / np.linalg.norm(v)))

    def is_ideal(self, tol: float = GeometryConstants.IDEAL_TOLERANCE) -> bool:
        v = self.vector
        return abs(v[2]) <= tol * np.linalg.norm(v)

    def to_euclidean(self) -> np.ndarray:
        """Image position (x/w, y/w)"""
        if self.w_h == 0:
            raise GeometryError("point at infinity has no finite image position")
        return np.array([self.x_h / self.w_h, self.y_h / self.w_h])


@dataclass(frozen=True)
class HomLine2:
    """Homogeneous image line l1*u + l2*v + l3 = 0"""
    l1: float
    l2: float
    l3: float

    def __post_init__(self):
        if not np.all(np.isfinite(self.vector)):
            raise ValidationError([f"line coefficients must be finite, got {self.vector}"])
        if self.l1 == 0 and self.l2 == 0:
            raise DegenerateLine("line normal (l1, l2) is zero")

    @classmethod
    def from_vector(cls, v) -> 'HomLine2':
        a, b, c = np.asarray(v, dtype=np.float64).reshape(3)
        return cls(float(a), float(b), float(c))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.l1, self.l2, self.l3], dtype=np.float64)

    @property
    def normal(self) -> np.ndarray:
        return np.array([self.l1, self.l2], dtype=np.float64)

    def canonical(self) -> 'HomLine2':
        v = self.vector
        return HomLine2.from_vector(canonical_sign(v / np.hypot(v[0], v[1])))

    def distance_to(self, p) -> float:
        """Euclidean distance from an image point (line must be canonical)"""
        u, v = np.asarray(p, dtype=np.float64).reshape(2)
        return abs(self.l1 * u + self.l2 * v + self.l3)


def canonical_distance(a: HomPoint2, b: HomPoint2) -> float:
    """Distance between two homogeneous points as unit vectors, sign-agnostic"""
    va = a.vector / np.linalg.norm(a.vector)
    vb = b.vector / np.linalg.norm(b.vector)
    return float(min(np.linalg.norm(va - vb), np.linalg.norm(va + vb)))


def image_line_through(p, q, eps_motion: float = GeometryConstants.EPS_MOTION) -> HomLine2:
    """
    Line through two image points.

    Raises:
        DegenerateLine: if |p - q| <= eps_motion
    """
    p = np.asarray(p, dtype=np.float64).reshape(2)
    q = np.asarray(q, dtype=np.float64).reshape(2)
    if np.hypot(*(p - q)) <= eps_motion:
        raise DegenerateLine(f"points {p} and {q} are closer than {eps_motion}")
    line = np.cross(np.append(p, 1.0), np.append(q, 1.0))
    return HomLine2.from_vector(line).canonical()


def lines_through_rows(P: np.ndarray, Q: np.ndarray,
                       eps_motion: float = GeometryConstants.EPS_MOTION) -> Tuple[np.ndarray, np.ndarray]:
    """
    Vectorised `image_line_through` for (N, 2) point arrays.

    Returns:
        (lines, moving): canonical (N, 3) line rows and the mask of rows whose
        displacement exceeds eps_motion. Rows outside the mask are zero.
    """
    P = np.asarray(P, dtype=np.float64).reshape(-1, 2)
    Q = np.asarray(Q, dtype=np.float64).reshape(-1, 2)
    moving = np.hypot(Q[:, 0] - P[:, 0], Q[:, 1] - P[:, 1]) > eps_motion

    ones = np.ones((len(P), 1))
    raw = np.cross(np.hstack([P, ones]), np.hstack([Q, ones]))
    lines = np.zeros_like(raw)
    if np.any(moving):
        kept = raw[moving]
        kept = kept / np.hypot(kept[:, 0], kept[:, 1])[:, None]
        lines[moving] = canonical_sign_rows(kept)
    return lines, moving


def intersect_lines(l1: HomLine2, l2: HomLine2,
                    tol: float = GeometryConstants.COINCIDENT_TOLERANCE) -> HomPoint2:
    """
    Intersection of two lines; an ideal point when they are parallel.

    Raises:
        CoincidentLines: if the lines are the same line
    """
    a = l1.canonical().vector
    b = l2.canonical().vector
    x = np.cross(a, b)
    if np.linalg.norm(x) <= tol:
        raise CoincidentLines(f"lines {a} and {b} coincide")
    return HomPoint2.from_vector(x).canonical()


def direction_from_vp(cam: Camera, vp: HomPoint2) -> np.ndarray:
    """
    3D direction from L through a vanishing point.

    Orientation is canonical (first component positive), not the direction
    of travel; triangulation does not depend on it.
    """
    v = np.array([vp.x_h, vp.y_h, vp.w_h * cam.f], dtype=np.float64)
    return canonical_sign(v / np.linalg.norm(v))
