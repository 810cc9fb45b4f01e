"""
Sequence Reconstructor

Anchors every track at its first image position on the plane Z = f, then
walks the frame intervals of each rigid object: one vanishing point per
(object, interval) from all motion lines, then one triangulation step per
live track from its current 3D point to its next observation.
"""

import logging
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from common.enums import GeometryConstants, StepStatus
from common.exceptions import (
    DegenerateBundle,
    EmptyInput,
    NearParallel,
    NonPositiveDepth,
    ValidationError,
)
from estimation.vanishing_point import (
    MotionPair,
    VpEstimate,
    estimate_vp,
    estimate_vp_from_rows,
    estimate_vp_pairwise,
    motion_lines,
)
from geometry.camera import Camera, backproject_dirs, backproject_ray, embed, project
from geometry.homogeneous import HomPoint2, direction_from_vp, lines_through_rows
from geometry.triangulation import TriangulationResult, triangulate, triangulate_batch
from .models import IntervalKey, ReconTrack, Reconstruction, StepRecord, Track

logger = logging.getLogger(__name__)


def anchor(cam: Camera, first_obs) -> np.ndarray:
    """Frame-0 reconstruction of a keypoint: its own image on the plane Z = f"""
    return embed(cam, first_obs)


def step(cam: Camera, current, next_obs, vp: HomPoint2,
         eps_motion: float = GeometryConstants.EPS_MOTION,
         eps_parallel: float = GeometryConstants.EPS_PARALLEL) -> TriangulationResult:
    """
    Advance one reconstructed point to its next observation.

    Returns the current point unchanged (status STATIONARY) when the keypoint
    did not move in the image. A motion direction along the new projection ray
    is rejected first: the image is then stationary whatever the depth change.

    Raises:
        NonPositiveDepth: current point not in front of the camera
        NearParallel: motion direction along the projection ray
        BehindCamera: from triangulate
    """
    current = np.asarray(current, dtype=np.float64).reshape(3)
    next_obs = np.asarray(next_obs, dtype=np.float64).reshape(2)
    if not current[2] > 0:
        raise NonPositiveDepth(f"current point has Z={current[2]}")

    ray = backproject_ray(cam, next_obs)
    direction = direction_from_vp(cam, vp)
    if np.linalg.norm(np.cross(ray.dir, direction)) < eps_parallel:
        raise NearParallel(f"motion direction {direction} runs along the projection ray of {next_obs}")

    if np.hypot(*(next_obs - project(cam, current))) <= eps_motion:
        return TriangulationResult(
            point=current.copy(),
            gap=0.0,
            lam=float(np.linalg.norm(current)),
            t=0.0,
            d_X=0.0,
            d_Z=float(current[2] - cam.f),
            status=StepStatus.STATIONARY,
        )

    return triangulate(ray, current, direction, f=cam.f, eps_parallel=eps_parallel)


def interval_pairs(tracks: Sequence[Track], object_id: int, interval: int) -> List[MotionPair]:
    """MotionPairs of one object's tracks observed in both `interval` and `interval + 1`"""
    pairs = []
    for track in sorted(tracks, key=lambda t: t.id):
        if track.object_id == object_id and track.has_frame(interval) and track.has_frame(interval + 1):
            pairs.append(MotionPair(track.id, track.point_at(interval), track.point_at(interval + 1)))
    return pairs


class _ObjectSequence:
    """Dense per-object view of the tracks and the chain state while reconstructing"""

    def __init__(self, cam: Camera, object_id: int, tracks: List[Track]):
        self.cam = cam
        self.object_id = object_id
        self.tracks = tracks
        self.start = min(t.first_frame for t in tracks)
        self.n_frames = max(t.last_frame for t in tracks) - self.start + 1

        n = len(tracks)
        self.obs = np.full((self.n_frames, n, 2), np.nan)
        self.valid = np.zeros((self.n_frames, n), dtype=bool)
        self.first_local = np.array([t.first_frame - self.start for t in tracks])
        for j, track in enumerate(tracks):
            a = track.first_frame - self.start
            self.obs[a:a + len(track), j] = track.points
            self.valid[a:a + len(track), j] = True

        self.current = np.full((n, 3), np.nan)
        self.active = np.zeros(n, dtype=bool)
        self.frames_out: List[List[int]] = [[] for _ in range(n)]
        self.points_out: List[List[np.ndarray]] = [[] for _ in range(n)]
        self.steps_out: List[List[StepRecord]] = [[] for _ in range(n)]

    def anchor_births(self, k: int):
        born = np.flatnonzero(self.first_local == k)
        if born.size == 0:
            return
        self.current[born, :2] = self.obs[k, born]
        self.current[born, 2] = self.cam.f
        self.active[born] = True
        for j in born:
            self.frames_out[j].append(self.start + k)
            self.points_out[j].append(self.current[j].copy())

    def record(self, j: int, frame: int, record: StepRecord, point: Optional[np.ndarray]):
        self.steps_out[j].append(record)
        if point is None:
            self.active[j] = False
            self.current[j] = np.nan
            return
        self.current[j] = point
        self.frames_out[j].append(frame)
        self.points_out[j].append(point.copy())

    def results(self) -> List[ReconTrack]:
        return [
            ReconTrack(
                id=track.id,
                object_id=track.object_id,
                frames=self.frames_out[j],
                points=np.array(self.points_out[j], dtype=np.float64).reshape(-1, 3),
                steps=self.steps_out[j],
            )
            for j, track in enumerate(self.tracks)
        ]


def _reconstruct_object(cam: Camera, object_id: int, tracks: List[Track], eps_motion: float,
                        eps_parallel: float, degenerate_eigenvalue: float, ideal_tolerance: float
                        ) -> Tuple[List[ReconTrack], Dict[IntervalKey, VpEstimate], Dict[IntervalKey, StepStatus]]:
    seq = _ObjectSequence(cam, object_id, tracks)
    vps: Dict[IntervalKey, VpEstimate] = {}
    failures: Dict[IntervalKey, StepStatus] = {}

    seq.anchor_births(0)
    for k in range(seq.n_frames - 1):
        frame_to = seq.start + k + 1
        key = (object_id, seq.start + k)

        # Motion lines use every track seen in both frames, including ones whose
        # 3D chain already stopped: the vanishing point is image-only
        both = seq.valid[k] & seq.valid[k + 1]
        lines, moving = lines_through_rows(seq.obs[k, both], seq.obs[k + 1, both], eps_motion)
        line_rows = lines[moving]

        estimate: Optional[VpEstimate] = None
        failure: Optional[StepStatus] = None
        if len(line_rows) >= 2:
            try:
                estimate = estimate_vp_from_rows(line_rows, degenerate_eigenvalue, ideal_tolerance)
                vps[key] = estimate
                logger.debug(f"Object {object_id} interval {key[1]}: vp {estimate.vp.vector}, "
                             f"rms {estimate.rms_residual:.3e} over {estimate.n_lines} lines")
            except DegenerateBundle:
                failure = StepStatus.DEGENERATE_BUNDLE
        else:
            failure = StepStatus.INSUFFICIENT_LINES

        stepping = np.flatnonzero(seq.active & seq.valid[k + 1])
        seq.active &= seq.valid[k + 1]

        if stepping.size:
            cur = seq.current[stepping]
            nxt = seq.obs[k + 1, stepping]
            in_front = cur[:, 2] > 0
            with np.errstate(divide='ignore', invalid='ignore'):
                proj = cam.f * cur[:, :2] / cur[:, 2:3]
            still = in_front & (np.hypot(nxt[:, 0] - proj[:, 0], nxt[:, 1] - proj[:, 1]) <= eps_motion)
            moving_rows = np.flatnonzero(~still & in_front)

            # The object moves, yet this image did not: motion along the projection ray
            direction = direction_from_vp(cam, estimate.vp) if estimate is not None else None
            if direction is not None:
                along_ray = still & (np.linalg.norm(np.cross(backproject_dirs(cam, nxt), direction), axis=1)
                                     < eps_parallel)
                still &= ~along_ray
                for row in np.flatnonzero(along_ray):
                    seq.record(stepping[row], frame_to, StepRecord(
                        frame_to, StepStatus.NEAR_PARALLEL, (float(nxt[row, 0]), float(nxt[row, 1]))), None)

            for row in np.flatnonzero(~in_front):
                seq.record(stepping[row], frame_to,
                           StepRecord(frame_to, StepStatus.BEHIND_CAMERA, (float(nxt[row, 0]), float(nxt[row, 1]))), None)

            for row in np.flatnonzero(still):
                point = cur[row]
                seq.record(stepping[row], frame_to, StepRecord(
                    frame=frame_to,
                    status=StepStatus.STATIONARY,
                    observed=(float(nxt[row, 0]), float(nxt[row, 1])),
                    d_X=0.0,
                    d_Z=float(point[2] - cam.f),
                    gap=0.0,
                    lam=float(np.linalg.norm(point)),
                ), point)

            if moving_rows.size and estimate is None:
                failures[key] = failure
                logger.warning(f"⚠️ Object {object_id} interval {key[1]}: {failure}, "
                               f"truncating {moving_rows.size} tracks")
                for row in moving_rows:
                    seq.record(stepping[row], frame_to, StepRecord(
                        frame_to, failure, (float(nxt[row, 0]), float(nxt[row, 1]))), None)

            elif moving_rows.size:
                batch = triangulate_batch(backproject_dirs(cam, nxt[moving_rows]), cur[moving_rows],
                                          direction, cam.f, eps_parallel)
                for m, row in enumerate(moving_rows):
                    status = batch.status[m]
                    record = StepRecord(
                        frame=frame_to,
                        status=status,
                        observed=(float(nxt[row, 0]), float(nxt[row, 1])),
                        d_X=float(batch.d_X[m]),
                        d_Z=float(batch.d_Z[m]),
                        gap=float(batch.gap[m]),
                        lam=float(batch.lam[m]),
                    )
                    seq.record(stepping[row], frame_to, record,
                               batch.points[m] if status.accepted else None)

                rejected = sum(1 for s in batch.status if not s.accepted)
                if rejected:
                    logger.warning(f"⚠️ Object {object_id} interval {key[1]}: {rejected} tracks truncated")

        seq.anchor_births(k + 1)

    return seq.results(), vps, failures


def reconstruct_sequence(cam: Camera, tracks: Sequence[Track], *,
                         eps_motion: float = GeometryConstants.EPS_MOTION,
                         eps_parallel: float = GeometryConstants.EPS_PARALLEL,
                         degenerate_eigenvalue: float = GeometryConstants.DEGENERATE_EIGENVALUE,
                         ideal_tolerance: float = GeometryConstants.IDEAL_TOLERANCE) -> Reconstruction:
    """
    Reconstruct every track of every rigid object.

    Objects and tracks are processed in ascending id order, so the output is
    deterministic. Failed steps truncate their track and are recorded, they
    never abort the run.

    Raises:
        EmptyInput: no tracks
        ValidationError: duplicate track ids
    """
    if not tracks:
        raise EmptyInput("no tracks to reconstruct")

    counts = defaultdict(int)
    for track in tracks:
        counts[track.id] += 1
    duplicates = sorted(tid for tid, count in counts.items() if count > 1)
    if duplicates:
        raise ValidationError([f"duplicate track ids {duplicates}"])

    by_object: Dict[int, List[Track]] = defaultdict(list)
    for track in tracks:
        by_object[track.object_id].append(track)

    recon = Reconstruction(camera=cam)
    for object_id in sorted(by_object):
        object_tracks = sorted(by_object[object_id], key=lambda t: t.id)
        results, vps, failures = _reconstruct_object(
            cam, object_id, object_tracks, eps_motion, eps_parallel, degenerate_eigenvalue, ideal_tolerance
        )
        recon.tracks.extend(results)
        recon.interval_vps.update(vps)
        recon.interval_failures.update(failures)

    recon.tracks.sort(key=lambda t: t.id)
    summary = recon.get_summary()
    logger.info(f"🧭 Reconstructed {summary['tracks']} tracks over {summary['frames']} frames "
                f"({summary['truncated_tracks']} truncated, {summary['intervals_failed']} failed intervals)")
    return recon


class Reconstructor:
    """Runs reconstruct_sequence with tolerances taken from Settings"""

    def __init__(self, settings=None):
        geometry = settings.geometry if settings is not None else None
        self.eps_motion = geometry.eps_motion if geometry else GeometryConstants.EPS_MOTION
        self.eps_parallel = geometry.eps_parallel if geometry else GeometryConstants.EPS_PARALLEL
        self.degenerate_eigenvalue = (geometry.degenerate_eigenvalue if geometry
                                      else GeometryConstants.DEGENERATE_EIGENVALUE)
        self.ideal_tolerance = geometry.ideal_tolerance if geometry else GeometryConstants.IDEAL_TOLERANCE
        self.coincident_tolerance = (geometry.coincident_tolerance if geometry
                                     else GeometryConstants.COINCIDENT_TOLERANCE)
        logger.info("🔧 Reconstructor initialized")

    def reconstruct(self, cam: Camera, tracks: Sequence[Track]) -> Reconstruction:
        return reconstruct_sequence(
            cam, tracks,
            eps_motion=self.eps_motion,
            eps_parallel=self.eps_parallel,
            degenerate_eigenvalue=self.degenerate_eigenvalue,
            ideal_tolerance=self.ideal_tolerance,
        )

    def estimate_interval(self, tracks: Sequence[Track], object_id: int, interval: int) -> VpEstimate:
        """Vanishing point of one object's motion between `interval` and `interval + 1`"""
        pairs = interval_pairs(tracks, object_id, interval)
        lines, dropped = motion_lines(pairs, self.eps_motion)
        if dropped:
            logger.info(f"Interval {interval}: {len(dropped)} stationary keypoints ignored")
        return estimate_vp(lines, self.degenerate_eigenvalue, self.ideal_tolerance)

    def cross_check_interval(self, tracks: Sequence[Track], object_id: int, interval: int) -> HomPoint2:
        """Pairwise-median vanishing point of the same motion lines as estimate_interval"""
        lines, _ = motion_lines(interval_pairs(tracks, object_id, interval), self.eps_motion)
        return estimate_vp_pairwise(lines, self.ideal_tolerance, self.coincident_tolerance)
