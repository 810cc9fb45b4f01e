"""
Reconstruction Data Structures

Track: one keypoint's image positions over a contiguous run of frames.
ReconTrack: the chained 3D reconstruction of a track plus per-step diagnostics.
Reconstruction: all ReconTracks and the vanishing point of every interval.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from common.enums import StepStatus
from common.exceptions import NonContiguousFrames, ValidationError
from estimation.vanishing_point import VpEstimate
from geometry.camera import Camera

logger = logging.getLogger(__name__)

IntervalKey = Tuple[int, int]  # (object_id, first frame of the interval)


@dataclass(eq=False)
class Track:
    """Image observations of one keypoint, frames strictly increasing and contiguous"""
    id: int
    object_id: int
    frames: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        self.frames = np.asarray(self.frames, dtype=np.int64).reshape(-1)
        self.points = np.asarray(self.points, dtype=np.float64).reshape(-1, 2)

        if len(self.frames) == 0:
            raise ValidationError([f"track {self.id} has no observations"])
        if len(self.frames) != len(self.points):
            raise ValidationError([f"track {self.id} has {len(self.frames)} frames but {len(self.points)} points"])
        if len(self.frames) > 1 and np.any(np.diff(self.frames) != 1):
            raise NonContiguousFrames([self.id])

    @classmethod
    def from_observations(cls, track_id: int, object_id: int,
                          obs: Iterable[Tuple[int, Iterable[float]]]) -> 'Track':
        obs = list(obs)
        return cls(
            id=track_id,
            object_id=object_id,
            frames=[frame for frame, _ in obs],
            points=[point for _, point in obs],
        )

    @property
    def obs(self) -> List[Tuple[int, np.ndarray]]:
        return [(int(frame), point) for frame, point in zip(self.frames, self.points)]

    @property
    def first_frame(self) -> int:
        return int(self.frames[0])

    @property
    def last_frame(self) -> int:
        return int(self.frames[-1])

    def has_frame(self, frame: int) -> bool:
        return self.first_frame <= frame <= self.last_frame

    def point_at(self, frame: int) -> np.ndarray:
        if not self.has_frame(frame):
            raise KeyError(f"track {self.id} has no observation in frame {frame}")
        return self.points[frame - self.first_frame]

    def __len__(self) -> int:
        return len(self.frames)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Track):
            return NotImplemented
        return (self.id == other.id and self.object_id == other.object_id
                and np.array_equal(self.frames, other.frames)
                and np.array_equal(self.points, other.points))


@dataclass(frozen=True)
class StepRecord:
    """Diagnostics for advancing a track into `frame`"""
    frame: int
    status: StepStatus
    observed: Tuple[float, float]
    d_X: float = float('nan')
    d_Z: float = float('nan')
    gap: float = float('nan')
    lam: float = float('nan')

    def to_dict(self) -> dict:
        def _num(x: float) -> Optional[float]:
            return None if np.isnan(x) else float(x)

        return {
            'frame': self.frame,
            'status': self.status.value,
            'observed': [float(self.observed[0]), float(self.observed[1])],
            'd_x': _num(self.d_X),
            'd_z': _num(self.d_Z),
            'gap': _num(self.gap),
            'lambda': _num(self.lam),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'StepRecord':
        def _num(x) -> float:
            return float('nan') if x is None else float(x)

        return cls(
            frame=int(data['frame']),
            status=StepStatus(data['status']),
            observed=(float(data['observed'][0]), float(data['observed'][1])),
            d_X=_num(data.get('d_x')),
            d_Z=_num(data.get('d_z')),
            gap=_num(data.get('gap')),
            lam=_num(data.get('lambda')),
        )


@dataclass(eq=False)
class ReconTrack:
    """Chained 3D positions of one keypoint; the first point lies on Z = f"""
    id: int
    object_id: int
    frames: np.ndarray
    points: np.ndarray
    steps: List[StepRecord] = field(default_factory=list)

    def __post_init__(self):
        self.frames = np.asarray(self.frames, dtype=np.int64).reshape(-1)
        self.points = np.asarray(self.points, dtype=np.float64).reshape(-1, 3)

    @property
    def anchor(self) -> np.ndarray:
        return self.points[0]

    @property
    def failure(self) -> Optional[StepStatus]:
        """Status of the step that truncated the track, if any"""
        for step in self.steps:
            if not step.status.accepted:
                return step.status
        return None

    @property
    def truncated(self) -> bool:
        return self.failure is not None

    def has_frame(self, frame: int) -> bool:
        return len(self.frames) > 0 and int(self.frames[0]) <= frame <= int(self.frames[-1])

    def point_at(self, frame: int) -> np.ndarray:
        if not self.has_frame(frame):
            raise KeyError(f"track {self.id} has no reconstructed point in frame {frame}")
        return self.points[frame - int(self.frames[0])]


@dataclass(eq=False)
class Reconstruction:
    """Output of reconstruct_sequence"""
    camera: Camera
    tracks: List[ReconTrack] = field(default_factory=list)
    interval_vps: Dict[IntervalKey, VpEstimate] = field(default_factory=dict)
    interval_failures: Dict[IntervalKey, StepStatus] = field(default_factory=dict)

    @property
    def is_empty(self) -> bool:
        return not any(len(track.frames) for track in self.tracks)

    @property
    def is_geometric_failure(self) -> bool:
        """Some interval needed a vanishing point and none could be estimated"""
        return bool(self.interval_failures) and not self.interval_vps

    def track(self, track_id: int) -> ReconTrack:
        for track in self.tracks:
            if track.id == track_id:
                return track
        raise KeyError(f"no reconstructed track {track_id}")

    def truncated_tracks(self) -> List[ReconTrack]:
        return [track for track in self.tracks if track.truncated]

    def frames(self) -> List[int]:
        """Sorted frame indices with at least one reconstructed point"""
        seen = set()
        for track in self.tracks:
            seen.update(int(frame) for frame in track.frames)
        return sorted(seen)

    def points_at_frame(self, frame: int) -> Tuple[List[int], np.ndarray]:
        """Ids and (N, 3) points of every track alive at `frame`, in id order"""
        ids = []
        points = []
        for track in self.tracks:
            if track.has_frame(frame):
                ids.append(track.id)
                points.append(track.point_at(frame))
        return ids, np.array(points, dtype=np.float64).reshape(-1, 3)

    def anchors(self) -> Tuple[List[int], np.ndarray]:
        """Ids and (N, 3) anchor points in id order"""
        kept = [track for track in self.tracks if len(track.frames)]
        return [t.id for t in kept], np.array([t.anchor for t in kept], dtype=np.float64).reshape(-1, 3)

    def get_summary(self) -> Dict:
        """Summary counts for logging and CLI display"""
        return {
            'tracks': len(self.tracks),
            'points': int(sum(len(track.frames) for track in self.tracks)),
            'truncated_tracks': len(self.truncated_tracks()),
            'intervals_estimated': len(self.interval_vps),
            'intervals_failed': len(self.interval_failures),
            'frames': len(self.frames()),
        }
