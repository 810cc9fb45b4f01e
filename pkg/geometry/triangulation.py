"""
Ray / Line Triangulation

Intersects the projection ray of the new observation with the line through
the current 3D point along the motion direction. With noisy input the two
lines are skew; the midpoint of their common perpendicular is returned and
its length is reported as the gap.
"""

import logging
from dataclasses import dataclass
from typing import List

import numpy as np

from common.enums import GeometryConstants, StepStatus
from common.exceptions import BehindCamera, NearParallel
from .camera import Ray3

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TriangulationResult:
    """Reconstructed point plus the plane translations that produced it"""
    point: np.ndarray
    gap: float
    lam: float
    t: float
    d_X: float
    d_Z: float
    status: StepStatus = StepStatus.OK

    def to_dict(self) -> dict:
        return {
            'point': [float(c) for c in self.point],
            'gap': self.gap,
            'lambda': self.lam,
            't': self.t,
            'd_x': self.d_X,
            'd_z': self.d_Z,
            'status': self.status.value,
        }


@dataclass(eq=False)
class TriangulationBatch:
    """Row-wise triangulation output; rows with a failed status hold NaN"""
    points: np.ndarray
    gap: np.ndarray
    lam: np.ndarray
    t: np.ndarray
    d_X: np.ndarray
    d_Z: np.ndarray
    status: List[StepStatus]

    def row(self, i: int) -> TriangulationResult:
        return TriangulationResult(
            point=self.points[i].copy(),
            gap=float(self.gap[i]),
            lam=float(self.lam[i]),
            t=float(self.t[i]),
            d_X=float(self.d_X[i]),
            d_Z=float(self.d_Z[i]),
            status=self.status[i],
        )


def triangulate_batch(ray_dirs: np.ndarray, anchors: np.ndarray, dirs: np.ndarray, f: float,
                      eps_parallel: float = GeometryConstants.EPS_PARALLEL) -> TriangulationBatch:
    """
    Triangulate N rays from the origin against N anchored lines.

    Args:
        ray_dirs: (N, 3) unit projection ray directions
        anchors: (N, 3) points the motion lines pass through
        dirs: (N, 3) or (3,) unit motion directions
        f: focal length, defines the reference plane Z = f for d_Z
        eps_parallel: minimum sin(angle) between ray and motion direction

    Returns:
        TriangulationBatch with OK / NEAR_PARALLEL / BEHIND_CAMERA per row
    """
    r = np.asarray(ray_dirs, dtype=np.float64).reshape(-1, 3)
    A = np.asarray(anchors, dtype=np.float64).reshape(-1, 3)
    d = np.broadcast_to(np.asarray(dirs, dtype=np.float64), r.shape)

    sin_angle = np.linalg.norm(np.cross(r, d), axis=1)
    near_parallel = sin_angle < eps_parallel

    # Ray origin is L = 0, so the offset from the anchor to the ray origin is -A
    w0 = -A
    b = np.sum(r * d, axis=1)
    dd = np.sum(r * w0, axis=1)
    e = np.sum(d * w0, axis=1)

    with np.errstate(divide='ignore', invalid='ignore'):
        lam = (b * e - dd) / (sin_angle * sin_angle)
        t = e + b * lam

    on_ray = lam[:, None] * r
    on_line = A + t[:, None] * d
    points = 0.5 * (on_ray + on_line)
    gap = np.linalg.norm(on_ray - on_line, axis=1)

    behind = ~near_parallel & ~(lam > 0)
    failed = near_parallel | behind

    status = [
        StepStatus.NEAR_PARALLEL if np_ else StepStatus.BEHIND_CAMERA if bh else StepStatus.OK
        for np_, bh in zip(near_parallel, behind)
    ]

    points[failed] = np.nan
    nan = np.where(failed, np.nan, 0.0)
    return TriangulationBatch(
        points=points,
        gap=gap + nan,
        lam=lam + nan,
        t=t + nan,
        d_X=points[:, 0] - A[:, 0],
        d_Z=points[:, 2] - f,
        status=status,
    )


def triangulate(ray: Ray3, anchor, direction, *, f: float,
                eps_parallel: float = GeometryConstants.EPS_PARALLEL) -> TriangulationResult:
    """
    Intersect a projection ray with the line {anchor + t * direction}.

    The result does not depend on the orientation of `direction`.

    Raises:
        NearParallel: ray and direction (almost) parallel, depth unrecoverable
        BehindCamera: the intersection is behind the projection center
    """
    d = np.asarray(direction, dtype=np.float64).reshape(3)
    d = d / np.linalg.norm(d)
    anchor = np.asarray(anchor, dtype=np.float64).reshape(3)

    # Shift so the ray starts at the origin, as triangulate_batch assumes
    batch = triangulate_batch(ray.dir[None, :], (anchor - ray.origin)[None, :], d, f, eps_parallel)
    result = batch.row(0)

    if result.status is StepStatus.NEAR_PARALLEL:
        raise NearParallel(f"ray {ray.dir} is parallel to direction {d} within {eps_parallel}")
    if result.status is StepStatus.BEHIND_CAMERA:
        raise BehindCamera(f"intersection with ray {ray.dir} lies behind the projection center")

    if np.any(ray.origin != 0):
        point = result.point + ray.origin
        return TriangulationResult(point=point, gap=result.gap, lam=result.lam, t=result.t,
                                   d_X=float(point[0] - anchor[0]), d_Z=float(point[2] - f))
    return result
