"""
Vanishing Point Estimation

Every keypoint of a rigidly translating object draws a motion line between
its positions in two consecutive frames; all of those lines meet in the
vanishing point of the translation direction. The estimate is the unit
homogeneous point minimising the sum of squared point-line products over
all lines, i.e. the null direction of the stacked (canonical) line matrix.
"""

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, List, Sequence, Tuple

import numpy as np

from common.enums import GeometryConstants
from common.exceptions import (
    CoincidentLines,
    DegenerateBundle,
    DegenerateLine,
    InsufficientLines,
    ValidationError,
)
from geometry.camera import Camera
from geometry.homogeneous import (
    HomLine2,
    HomPoint2,
    canonical_sign,
    direction_from_vp,
    image_line_through,
    intersect_lines,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MotionPair:
    """One keypoint seen in frame i (p) and frame i+1 (q)"""
    track_id: Hashable
    p: np.ndarray
    q: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=np.float64).reshape(2)
        q = np.asarray(self.q, dtype=np.float64).reshape(2)
        if not (np.all(np.isfinite(p)) and np.all(np.isfinite(q))):
            raise ValidationError([f"motion pair {self.track_id} has non-finite coordinates"])
        object.__setattr__(self, 'p', p)
        object.__setattr__(self, 'q', q)


@dataclass(frozen=True, eq=False)
class VpEstimate:
    """Least-squares vanishing point of a motion-line bundle"""
    vp: HomPoint2
    n_lines: int
    rms_residual: float
    max_residual: float
    is_ideal: bool = False
    singular_values: Tuple[float, float, float] = field(default=(0.0, 0.0, 0.0))

    def direction(self, cam: Camera) -> np.ndarray:
        """3D motion direction (up to sign) implied by the vanishing point"""
        return direction_from_vp(cam, self.vp)

    def to_dict(self) -> dict:
        return {
            'vp': [self.vp.x_h, self.vp.y_h, self.vp.w_h],
            'n_lines': self.n_lines,
            'rms_residual': self.rms_residual,
            'max_residual': self.max_residual,
            'is_ideal': self.is_ideal,
            'singular_values': list(self.singular_values),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'VpEstimate':
        return cls(
            vp=HomPoint2.from_vector(data['vp']),
            n_lines=int(data['n_lines']),
            rms_residual=float(data['rms_residual']),
            max_residual=float(data['max_residual']),
            is_ideal=bool(data.get('is_ideal', False)),
            singular_values=tuple(float(s) for s in data.get('singular_values', (0.0, 0.0, 0.0))),
        )


def motion_lines(pairs: Sequence[MotionPair],
                 eps_motion: float = GeometryConstants.EPS_MOTION
                 ) -> Tuple[List[Tuple[Hashable, HomLine2]], List[Hashable]]:
    """
    Build one canonical motion line per moving pair.

    Returns:
        (lines, dropped): (track_id, line) for every pair that moved more than
        eps_motion, and the ids of the pairs that did not
    """
    lines = []
    dropped = []
    for pair in pairs:
        try:
            lines.append((pair.track_id, image_line_through(pair.p, pair.q, eps_motion)))
        except DegenerateLine:
            dropped.append(pair.track_id)

    if dropped:
        logger.debug(f"Dropped {len(dropped)} stationary pairs out of {len(pairs)}")
    return lines, dropped


def _bundle_residuals(L: np.ndarray, v: np.ndarray, is_ideal: bool) -> np.ndarray:
    """Per-line residual in length units"""
    if not is_ideal:
        return np.abs(L @ v) / abs(v[2])

    # Angle between each line and the common direction, scaled by how far the
    # bundle extends from the principal point
    direction = v[:2] / np.linalg.norm(v[:2])
    deviation = np.arcsin(np.clip(np.abs(L[:, :2] @ direction), 0.0, 1.0))
    spread = float(np.max(np.abs(L[:, 2])))
    return deviation * (spread if spread > 0 else 1.0)


def estimate_vp_from_rows(L: np.ndarray,
                          degenerate_eigenvalue: float = GeometryConstants.DEGENERATE_EIGENVALUE,
                          ideal_tolerance: float = GeometryConstants.IDEAL_TOLERANCE) -> VpEstimate:
    """
    Estimate the vanishing point of canonical line rows (already in id order).

    The right singular vectors of L are the eigenvectors of the scatter
    matrix L^T L and the squared singular values its eigenvalues.
    """
    L = np.asarray(L, dtype=np.float64).reshape(-1, 3)
    if len(L) < 2:
        raise InsufficientLines(f"need at least 2 motion lines, got {len(L)}")

    _, s, vh = np.linalg.svd(L, full_matrices=True)
    singular = np.zeros(3)
    singular[:len(s)] = s
    eigenvalues = singular ** 2
    if eigenvalues[1] < degenerate_eigenvalue and eigenvalues[2] < degenerate_eigenvalue:
        raise DegenerateBundle(f"all {len(L)} motion lines coincide (eigenvalues {eigenvalues})")

    v = canonical_sign(vh[-1] / np.linalg.norm(vh[-1]))
    vp = HomPoint2.from_vector(v)
    is_ideal = vp.is_ideal(ideal_tolerance)
    residuals = _bundle_residuals(L, v, is_ideal)

    return VpEstimate(
        vp=vp,
        n_lines=len(L),
        rms_residual=float(np.sqrt(np.mean(residuals ** 2))),
        max_residual=float(np.max(residuals)),
        is_ideal=is_ideal,
        singular_values=tuple(float(x) for x in singular),
    )


def estimate_vp(lines: Sequence[Tuple[Hashable, HomLine2]],
                degenerate_eigenvalue: float = GeometryConstants.DEGENERATE_EIGENVALUE,
                ideal_tolerance: float = GeometryConstants.IDEAL_TOLERANCE) -> VpEstimate:
    """
    Total-least-squares vanishing point of a line bundle.

    Lines are stacked in ascending id order so the result does not depend on
    the order the caller supplies them in.

    Raises:
        InsufficientLines: fewer than two lines
        DegenerateBundle: all lines are the same line
    """
    if len(lines) < 2:
        raise InsufficientLines(f"need at least 2 motion lines, got {len(lines)}")

    ordered = sorted(lines, key=lambda item: item[0])
    L = np.array([line.canonical().vector for _, line in ordered])
    return estimate_vp_from_rows(L, degenerate_eigenvalue, ideal_tolerance)


def estimate_vp_pairwise(lines: Sequence[Tuple[Hashable, HomLine2]],
                         ideal_tolerance: float = GeometryConstants.IDEAL_TOLERANCE,
                         coincident_tolerance: float = GeometryConstants.COINCIDENT_TOLERANCE) -> HomPoint2:
    """
    Brute-force cross-check for `estimate_vp`.

    Intersects every pair of lines and returns the component-wise median of
    the finite intersections, or the median direction when most of them are
    at infinity.
    """
    if len(lines) < 2:
        raise InsufficientLines(f"need at least 2 motion lines, got {len(lines)}")

    ordered = sorted(lines, key=lambda item: item[0])
    finite = []
    ideal = []
    for (_, a), (_, b) in combinations(ordered, 2):
        try:
            x = intersect_lines(a, b, coincident_tolerance)
        except CoincidentLines:
            continue
        if x.is_ideal(ideal_tolerance):
            direction = canonical_sign(x.vector[:2] / np.linalg.norm(x.vector[:2]))
            ideal.append(direction)
        else:
            finite.append(x.to_euclidean())

    if not finite and not ideal:
        raise DegenerateBundle(f"all {len(lines)} lines coincide")

    if len(ideal) > len(finite):
        median = np.median(np.array(ideal), axis=0)
        median = median / np.linalg.norm(median)
        return HomPoint2(float(median[0]), float(median[1]), 0.0).canonical()

    median = np.median(np.array(finite), axis=0)
    return HomPoint2.from_euclidean(median)


def analytic_vp(cam: Camera, delta) -> HomPoint2:
    """Vanishing point of 3D translation delta: (f*dx, f*dy, dz) up to scale"""
    dx, dy, dz = np.asarray(delta, dtype=np.float64).reshape(3)
    if math.hypot(dx, dy, dz) == 0:
        raise ValidationError(["translation must be non-zero"])
    return HomPoint2(cam.f * dx, cam.f * dy, dz).canonical()
