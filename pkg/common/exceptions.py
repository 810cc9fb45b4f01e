"""
Exception hierarchy for the reconstruction pipeline.

Every class carries the CLI exit code it maps to, so command handlers can
translate failures without a lookup table.
"""

from typing import Iterable, List, Optional

from .enums import ExitCode


class ReconstructionError(Exception):
    """Root of all pipeline errors"""
    exit_code = ExitCode.GEOMETRY


# Geometry ---------------------------------------------------------------

class GeometryError(ReconstructionError):
    """A geometric construction could not be carried out"""
    exit_code = ExitCode.GEOMETRY


class NonPositiveDepth(GeometryError):
    """Point is not strictly in front of the projection center"""


class DegenerateLine(GeometryError):
    """The two image points are too close to define a line"""


class CoincidentLines(GeometryError):
    """Two lines are the same line, so they have no unique intersection"""


class NearParallel(GeometryError):
    """Projection ray and motion direction are (almost) parallel"""


class BehindCamera(GeometryError):
    """Triangulated point lies behind the projection center"""


# Vanishing point estimation ----------------------------------------------

class EstimationError(ReconstructionError):
    """Vanishing point estimation failed"""
    exit_code = ExitCode.GEOMETRY


class InsufficientLines(EstimationError):
    """Fewer than two usable motion lines"""


class DegenerateBundle(EstimationError):
    """All motion lines coincide"""


# Input ------------------------------------------------------------------

class InputError(ReconstructionError, ValueError):
    """Input files or arguments are malformed or invalid"""
    exit_code = ExitCode.INPUT


class ParseError(InputError):
    """A document could not be parsed"""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.line = line
        self.field = field
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field '{field}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")


class ValidationError(InputError):
    """A parsed document violates an invariant"""

    def __init__(self, issues: Iterable[str]):
        self.issues: List[str] = list(issues)
        super().__init__("; ".join(self.issues))


class NonContiguousFrames(InputError):
    """Track observations skip frames"""

    def __init__(self, track_ids: Iterable[int]):
        self.track_ids = sorted(track_ids)
        super().__init__(f"non-contiguous frames in tracks {self.track_ids}")


class IdMismatch(InputError):
    """Reconstruction and ground truth do not describe the same tracks"""

    def __init__(self, ids: Iterable[int], reason: str = "missing from ground truth"):
        self.ids = sorted(ids)
        super().__init__(f"track ids {self.ids} {reason}")


class EmptyInput(InputError):
    """Nothing to process"""


class DepthViolation(InputError):
    """A simulated point reached Z <= 0"""


# Export -----------------------------------------------------------------

class ExportError(ReconstructionError):
    """Writing output files failed"""
    exit_code = ExitCode.INPUT


class IoError(ExportError):
    """Underlying filesystem error while writing"""
