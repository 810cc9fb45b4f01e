"""
Metrics Calculator

Compares a reconstruction with ground truth. A reconstruction is only
defined up to one similarity factor per keypoint (about the projection
center), so every track is first fitted with its least-squares scale and
the error is measured after that alignment.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from common.enums import StepStatus, VerificationConstants
from common.exceptions import IdMismatch, IoError
from common.serialization import dumps
from reconstruction.models import Reconstruction
from simulation.simulation_engine import GroundTruth

logger = logging.getLogger(__name__)


@dataclass
class TrackMetrics:
    """Scale fit and aligned error of one track"""
    track_id: int
    object_id: int
    n_points: int
    fitted_scale: float
    expected_scale: Optional[float]
    scale_error: Optional[float]  # relative
    rmse: float
    max_error: float
    truncated: bool
    failure: Optional[str] = None


@dataclass
class IntervalMetrics:
    """Vanishing point quality of one (object, interval)"""
    object_id: int
    interval: int
    n_lines: int
    rms_residual: float
    max_residual: float
    is_ideal: bool


@dataclass
class DepthAudit:
    """
    Check of the depth relation on every accepted triangulation step:
    Y(point) * f == v(observed) * Z(point).
    """
    checked: int = 0
    worst_residual: float = 0.0
    violations: List[Tuple[int, int, float]] = field(default_factory=list)  # (track_id, frame, residual)

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass
class VerifyReport:
    """Per-track, per-interval and global verification results"""
    tracks: List[TrackMetrics]
    intervals: List[IntervalMetrics]
    worst_rmse: float
    global_rmse: float
    worst_scale_error: Optional[float]
    truncated_tracks: int
    mean_vp_residual: Optional[float]
    depth: DepthAudit
    scale_tolerance: float = VerificationConstants.SCALE_TOLERANCE
    rmse_tolerance: float = VerificationConstants.RMSE_TOLERANCE

    @property
    def passed(self) -> bool:
        """Every threshold met: scale, RMSE, no truncations and a clean depth audit"""
        return (
            self.worst_scale_error is not None
            and self.worst_scale_error <= self.scale_tolerance
            and self.worst_rmse <= self.rmse_tolerance
            and self.truncated_tracks == 0
            and self.depth.passed
        )

    def to_dataframe(self) -> pd.DataFrame:
        """Per-track metrics as a DataFrame indexed by track_id"""
        columns = [f for f in TrackMetrics.__dataclass_fields__]
        df = pd.DataFrame([vars(m) for m in self.tracks], columns=columns)
        return df.set_index('track_id')

    def to_dict(self) -> Dict:
        return {
            'passed': self.passed,
            'global': {
                'worst_rmse': self.worst_rmse,
                'global_rmse': self.global_rmse,
                'worst_scale_error': self.worst_scale_error,
                'truncated_tracks': self.truncated_tracks,
                'mean_vp_residual': self.mean_vp_residual,
                'scale_tolerance': self.scale_tolerance,
                'rmse_tolerance': self.rmse_tolerance,
            },
            'depth_audit': {
                'checked': self.depth.checked,
                'worst_residual': self.depth.worst_residual,
                'violations': [
                    {'track_id': t, 'frame': f, 'residual': r} for t, f, r in self.depth.violations
                ],
            },
            'intervals': [vars(m) for m in self.intervals],
            'tracks': [vars(m) for m in self.tracks],
        }


def fit_scale(recon_points: np.ndarray, true_points: np.ndarray) -> Tuple[float, np.ndarray]:
    """
    Least-squares scale s about the origin minimising sum |r - s g|^2.

    Returns:
        (s, residual vectors r - s g)
    """
    r = np.asarray(recon_points, dtype=np.float64).reshape(-1, 3)
    g = np.asarray(true_points, dtype=np.float64).reshape(-1, 3)
    denominator = float(np.sum(g * g))
    s = float(np.sum(r * g)) / denominator if denominator > 0 else math.nan
    return s, r - s * g


def depth_audit(recon: Reconstruction, tolerance: float = VerificationConstants.DEPTH_TOLERANCE) -> DepthAudit:
    """
    Audit every OK step: the new point's height and depth must reproduce
    the observed image height, |Y f - v Z| <= tol * max(1, |Y f|).
    """
    f = recon.camera.f
    audit = DepthAudit()
    for track in recon.tracks:
        for record in track.steps:
            if record.status is not StepStatus.OK:
                continue
            x, y, z = track.point_at(record.frame)
            residual = abs(y * f - record.observed[1] * z)
            audit.checked += 1
            audit.worst_residual = max(audit.worst_residual, residual)
            if residual > tolerance * max(1.0, abs(y * f)):
                audit.violations.append((track.id, record.frame, residual))
    return audit


class MetricsCalculator:
    """
    Builds VerifyReports.

    Tolerances come from VerificationSettings when a Settings object is given.
    """

    def __init__(self, settings=None):
        verification = settings.verification if settings is not None else None
        self.scale_tolerance = (verification.scale_tolerance if verification
                                else VerificationConstants.SCALE_TOLERANCE)
        self.rmse_tolerance = verification.rmse_tolerance if verification else VerificationConstants.RMSE_TOLERANCE
        self.depth_tolerance = verification.depth_tolerance if verification else VerificationConstants.DEPTH_TOLERANCE
        logger.info("📊 MetricsCalculator initialized")

    def _check_ids(self, recon: Reconstruction, truth: GroundTruth):
        missing = [track.id for track in recon.tracks if track.id not in truth]
        if missing:
            raise IdMismatch(missing)
        uncovered = [
            track.id for track in recon.tracks
            if len(track.frames) and not (truth[track.id].has_frame(int(track.frames[0]))
                                          and truth[track.id].has_frame(int(track.frames[-1])))
        ]
        if uncovered:
            raise IdMismatch(uncovered, "have reconstructed frames without ground truth")

    def _track_metrics(self, cam, track, truth_track) -> Tuple[TrackMetrics, np.ndarray]:
        failure = track.failure
        if not len(track.frames):
            return TrackMetrics(track.id, track.object_id, 0, math.nan, None, None, 0.0, 0.0,
                                track.truncated, failure.value if failure else None), np.zeros((0, 3))

        start = int(truth_track.frames[0])
        truth_points = truth_track.points[track.frames - start]
        scale, residuals = fit_scale(track.points, truth_points)
        errors = np.linalg.norm(residuals, axis=1)

        expected = cam.f / float(truth_points[0, 2])
        return TrackMetrics(
            track_id=track.id,
            object_id=track.object_id,
            n_points=len(track.frames),
            fitted_scale=scale,
            expected_scale=expected,
            scale_error=abs(scale - expected) / expected,
            rmse=float(np.sqrt(np.mean(errors ** 2))),
            max_error=float(errors.max()),
            truncated=track.truncated,
            failure=failure.value if failure else None,
        ), residuals

    def verify(self, recon: Reconstruction, truth: GroundTruth) -> VerifyReport:
        """
        Compare a reconstruction with id-aligned ground truth.

        Raises:
            IdMismatch: a reconstructed track or frame has no ground truth
        """
        self._check_ids(recon, truth)

        track_metrics = []
        all_residuals = []
        for track in sorted(recon.tracks, key=lambda t: t.id):
            metrics, residuals = self._track_metrics(recon.camera, track, truth[track.id])
            track_metrics.append(metrics)
            all_residuals.append(residuals)

        intervals = [
            IntervalMetrics(object_id, interval, estimate.n_lines, estimate.rms_residual,
                            estimate.max_residual, estimate.is_ideal)
            for (object_id, interval), estimate in sorted(recon.interval_vps.items())
        ]

        residuals = np.concatenate(all_residuals) if all_residuals else np.zeros((0, 3))
        scale_errors = [m.scale_error for m in track_metrics if m.scale_error is not None]
        report = VerifyReport(
            tracks=track_metrics,
            intervals=intervals,
            worst_rmse=max((m.rmse for m in track_metrics), default=0.0),
            global_rmse=float(np.sqrt(np.mean(np.sum(residuals ** 2, axis=1)))) if len(residuals) else 0.0,
            worst_scale_error=max(scale_errors) if scale_errors else None,
            truncated_tracks=sum(1 for m in track_metrics if m.truncated),
            mean_vp_residual=float(np.mean([i.rms_residual for i in intervals])) if intervals else None,
            depth=depth_audit(recon, self.depth_tolerance),
            scale_tolerance=self.scale_tolerance,
            rmse_tolerance=self.rmse_tolerance,
        )

        logger.info(f"📈 Verified {len(track_metrics)} tracks: worst RMSE {report.worst_rmse:.3e}, "
                    f"{report.truncated_tracks} truncated, {'passed' if report.passed else 'failed'}")
        if report.depth.violations:
            logger.warning(f"⚠️ Depth audit: {len(report.depth.violations)} of {report.depth.checked} steps violate "
                           f"the depth relation (worst {report.depth.worst_residual:.3e})")
        return report


def verify(recon: Reconstruction, truth: GroundTruth, settings=None) -> VerifyReport:
    """Convenience wrapper around MetricsCalculator.verify"""
    return MetricsCalculator(settings).verify(recon, truth)


def write_report(path: Union[str, Path], report: VerifyReport):
    """Write a VerifyReport as a JSON document"""
    try:
        Path(path).write_text(dumps(report.to_dict()))
    except OSError as e:
        raise IoError(f"cannot write report {path}: {e}") from e
    logger.info(f"💾 Wrote verification report to {Path(path).name}")
