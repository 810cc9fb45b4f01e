"""
Common enums, constants and exceptions for the reconstruction pipeline.
"""

from .enums import (
    StepStatus,
    ShapeKind,
    ExitCode,
    GeometryConstants,
    SimulationConstants,
    VerificationConstants,
    ExportConstants,
)
from .exceptions import (
    ReconstructionError,
    GeometryError,
    NonPositiveDepth,
    DegenerateLine,
    CoincidentLines,
    NearParallel,
    BehindCamera,
    EstimationError,
    InsufficientLines,
    DegenerateBundle,
    InputError,
    ParseError,
    ValidationError,
    NonContiguousFrames,
    IdMismatch,
    EmptyInput,
    DepthViolation,
    ExportError,
    IoError,
)

__all__ = [
    'StepStatus',
    'ShapeKind',
    'ExitCode',
    'GeometryConstants',
    'SimulationConstants',
    'VerificationConstants',
    'ExportConstants',
    'ReconstructionError',
    'GeometryError',
    'NonPositiveDepth',
    'DegenerateLine',
    'CoincidentLines',
    'NearParallel',
    'BehindCamera',
    'EstimationError',
    'InsufficientLines',
    'DegenerateBundle',
    'InputError',
    'ParseError',
    'ValidationError',
    'NonContiguousFrames',
    'IdMismatch',
    'EmptyInput',
    'DepthViolation',
    'ExportError',
    'IoError',
]
