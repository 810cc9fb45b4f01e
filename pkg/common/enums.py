"""
Common enums and constants for the vanishing-point reconstruction pipeline.
Provides type safety and consistency across the codebase.
"""

from enum import Enum


class StepStatus(Enum):
    """Outcome of advancing one track across one frame interval"""
    OK = "OK"
    STATIONARY = "STATIONARY"
    NEAR_PARALLEL = "NEAR_PARALLEL"
    BEHIND_CAMERA = "BEHIND_CAMERA"
    INSUFFICIENT_LINES = "INSUFFICIENT_LINES"
    DEGENERATE_BUNDLE = "DEGENERATE_BUNDLE"

    def __str__(self) -> str:
        return self.value

    @property
    def accepted(self) -> bool:
        """True when the step produced a point and the track keeps going"""
        return self in (StepStatus.OK, StepStatus.STATIONARY)


class ShapeKind(Enum):
    """Kinds of synthetic object geometry understood by scene documents"""
    SPHERE = "sphere"
    POINTS = "points"
    KEYFRAMES = "keyframes"

    def __str__(self) -> str:
        return self.value


class ExitCode:
    """Process exit codes used by the CLI"""
    SUCCESS = 0
    USAGE = 1
    INPUT = 2
    GEOMETRY = 3


class GeometryConstants:
    """Numerical thresholds for the pinhole and homogeneous geometry"""
    # Minimum image displacement that still defines a motion line
    EPS_MOTION = 1e-9

    # Triangulation is rejected below this sin(angle) between ray and direction
    EPS_PARALLEL = 1e-6

    # |l1 x l2| at or below this means the two lines are the same line
    COINCIDENT_TOLERANCE = 1e-12

    # Canonical |w| at or below this is treated as a point at infinity
    IDEAL_TOLERANCE = 1e-10

    # Smallest two scatter eigenvalues below this: every line is the same line
    DEGENERATE_EIGENVALUE = 1e-18

    # Signs are decided on the first component larger than this
    SIGN_TOLERANCE = 1e-12


class SimulationConstants:
    """Defaults for synthetic scenes (the reference experiment gives none)"""
    DEFAULT_RADIUS = 2.0
    DEFAULT_N_POINTS = 200
    DEFAULT_FOCAL_LENGTH = 1.0
    DEFAULT_SEED = 0

    # track_id = object_id * TRACK_ID_OFFSET + point index
    TRACK_ID_OFFSET = 100000


class VerificationConstants:
    """Pass/fail thresholds for the verification report"""
    SCALE_TOLERANCE = 1e-9   # relative
    RMSE_TOLERANCE = 1e-9    # length units
    DEPTH_TOLERANCE = 1e-12    # relative to max(1, |Y f|)


class ExportConstants:
    """Text serialisation settings"""
    FLOAT_FORMAT = '%.17g'
    TRACK_COLUMNS = ['track_id', 'object_id', 'frame', 'u', 'v']
    TRUTH_COLUMNS = ['track_id', 'object_id', 'frame', 'x', 'y', 'z']
    PLY_COLOR = (255, 255, 255)
    ANCHOR_COLOR = (255, 0, 0)
