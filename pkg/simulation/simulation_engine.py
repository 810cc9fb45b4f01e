"""
Scene Simulation Engine

Forward model for synthetic experiments: moves every object through its
waypoints, projects each cloud point through the camera into a Track and
keeps the pre-noise 3D positions as ground truth.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from common.enums import SimulationConstants
from common.exceptions import DepthViolation, ValidationError
from reconstruction.models import Reconstruction, Track
from .noise import track_noise
from .scene import SceneSpec, base_cloud, pose_at_frame

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class TruthTrack:
    """True 3D positions of one keypoint per frame"""
    track_id: int
    object_id: int
    frames: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        self.frames = np.asarray(self.frames, dtype=np.int64).reshape(-1)
        self.points = np.asarray(self.points, dtype=np.float64).reshape(-1, 3)

    def has_frame(self, frame: int) -> bool:
        return len(self.frames) > 0 and int(self.frames[0]) <= frame <= int(self.frames[-1])

    def point_at(self, frame: int) -> np.ndarray:
        if not self.has_frame(frame):
            raise KeyError(f"no ground truth for track {self.track_id} in frame {frame}")
        return self.points[frame - int(self.frames[0])]


@dataclass(eq=False)
class GroundTruth:
    """Per-track true trajectories, aligned 1:1 with the emitted Tracks"""
    tracks: Dict[int, TruthTrack] = field(default_factory=dict)

    def __contains__(self, track_id: int) -> bool:
        return track_id in self.tracks

    def __getitem__(self, track_id: int) -> TruthTrack:
        return self.tracks[track_id]

    def __len__(self) -> int:
        return len(self.tracks)

    @classmethod
    def from_reconstruction(cls, recon: Reconstruction) -> 'GroundTruth':
        """Treat a reconstruction as its own ground truth"""
        return cls({
            track.id: TruthTrack(track.id, track.object_id, track.frames.copy(), track.points.copy())
            for track in recon.tracks
        })


def render_tracks(spec: SceneSpec,
                  track_id_offset: int = SimulationConstants.TRACK_ID_OFFSET
                  ) -> Tuple[List[Track], GroundTruth]:
    """
    Project every object point of the scene into one Track per point.

    track_id = object_id * track_id_offset + point index. Observations carry
    Gaussian noise of spec.noise_sigma per coordinate when it is positive.

    Raises:
        ValidationError: the scene violates an invariant
        DepthViolation: some point reaches Z <= 0
    """
    issues = spec.validate()
    if issues:
        raise ValidationError(issues)

    cam = spec.camera
    tracks: List[Track] = []
    truth = GroundTruth()
    frames = np.arange(spec.n_frames)

    for obj in sorted(spec.objects, key=lambda o: o.object_id):
        base = base_cloud(obj)
        if len(base) > track_id_offset:
            raise ValidationError([f"object {obj.object_id} has {len(base)} points, "
                                   f"more than the track id offset {track_id_offset}"])

        # (n_frames, n_points, 3)
        poses = np.stack([pose_at_frame(obj, frame, base) for frame in range(spec.n_frames)])
        bad = np.argwhere(~(poses[:, :, 2] > 0))
        if len(bad):
            frame, index = bad[0]
            raise DepthViolation(f"object {obj.object_id} point {index} has Z={poses[frame, index, 2]} "
                                 f"in frame {frame} ({len(bad)} violations)")

        images = cam.f * poses[:, :, :2] / poses[:, :, 2:3]
        for index in range(poses.shape[1]):
            track_id = obj.object_id * track_id_offset + index
            observed = images[:, index] + track_noise(spec.seed, track_id, spec.n_frames, spec.noise_sigma)
            tracks.append(Track(track_id, obj.object_id, frames, observed))
            truth.tracks[track_id] = TruthTrack(track_id, obj.object_id, frames, poses[:, index])

    return tracks, truth


@dataclass
class SimulationResult:
    """Tracks, truth and summary counts of one simulation run"""
    tracks: List[Track]
    truth: GroundTruth
    stats: Dict


class SimulationEngine:
    """
    Runs synthetic scenes through the forward model.

    Keeps per-object counters for the run summary.
    """

    def __init__(self, settings=None):
        self.track_id_offset = (settings.simulation.track_id_offset if settings is not None
                                else SimulationConstants.TRACK_ID_OFFSET)
        self.runs = 0
        self.tracks_by_object = defaultdict(int)
        logger.info("🎬 Simulation engine initialized")

    def reset(self):
        """Reset run counters"""
        self.runs = 0
        self.tracks_by_object.clear()

    def run(self, spec: SceneSpec) -> SimulationResult:
        tracks, truth = render_tracks(spec, self.track_id_offset)

        per_object = defaultdict(int)
        for track in tracks:
            per_object[track.object_id] += 1
            self.tracks_by_object[track.object_id] += 1
        self.runs += 1

        stats = {
            'objects': len(per_object),
            'tracks': len(tracks),
            'frames': spec.n_frames,
            'observations': len(tracks) * spec.n_frames,
            'noise_sigma': spec.noise_sigma,
            'tracks_by_object': dict(per_object),
        }
        logger.info(f"🎬 Simulated {stats['tracks']} tracks over {stats['frames']} frames "
                    f"(σ={spec.noise_sigma})")
        return SimulationResult(tracks=tracks, truth=truth, stats=stats)


def simulate(spec: SceneSpec, settings=None) -> SimulationResult:
    """Convenience wrapper: one SimulationEngine run"""
    return SimulationEngine(settings).run(spec)


def true_scale(cam, truth_track: TruthTrack, frame: Optional[int] = None) -> float:
    """f / Z at the track's first (or given) frame: the similarity factor a noiseless reconstruction has"""
    frame = int(truth_track.frames[0]) if frame is None else frame
    return cam.f / float(truth_track.point_at(frame)[2])
