"""
Settings Management
Centralized configuration management for the reconstruction pipeline
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from common.enums import (
    ExportConstants,
    GeometryConstants,
    SimulationConstants,
    VerificationConstants,
)
from common.exceptions import ParseError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "vpr_config.json"


@dataclass
class GeometrySettings:
    """Numerical thresholds for projection, motion lines and triangulation"""
    eps_motion: float = GeometryConstants.EPS_MOTION
    eps_parallel: float = GeometryConstants.EPS_PARALLEL
    coincident_tolerance: float = GeometryConstants.COINCIDENT_TOLERANCE
    ideal_tolerance: float = GeometryConstants.IDEAL_TOLERANCE
    degenerate_eigenvalue: float = GeometryConstants.DEGENERATE_EIGENVALUE


@dataclass
class SimulationSettings:
    """Defaults for synthetic scenes"""
    default_radius: float = SimulationConstants.DEFAULT_RADIUS
    default_n_points: int = SimulationConstants.DEFAULT_N_POINTS
    default_focal_length: float = SimulationConstants.DEFAULT_FOCAL_LENGTH
    track_id_offset: int = SimulationConstants.TRACK_ID_OFFSET


@dataclass
class VerificationSettings:
    """Pass/fail thresholds for verify"""
    scale_tolerance: float = VerificationConstants.SCALE_TOLERANCE
    rmse_tolerance: float = VerificationConstants.RMSE_TOLERANCE
    depth_tolerance: float = VerificationConstants.DEPTH_TOLERANCE


@dataclass
class ExportSettings:
    """Output formatting"""
    float_format: str = ExportConstants.FLOAT_FORMAT
    ply_color: Tuple[int, int, int] = ExportConstants.PLY_COLOR
    anchor_color: Tuple[int, int, int] = ExportConstants.ANCHOR_COLOR


class Settings:
    """Main settings manager"""

    def __init__(self, config: Dict = None):
        self.config = config or {}

        # Initialize setting groups
        self.geometry = self._init_geometry_settings()
        self.simulation = self._init_simulation_settings()
        self.verification = self._init_verification_settings()
        self.export = self._init_export_settings()

        logger.info("⚙️ Settings initialized")

    @classmethod
    def from_file(cls, path: Optional[Union[str, Path]] = None) -> 'Settings':
        """Load settings from a JSON file; a missing file gives the defaults"""
        path = Path(path or DEFAULT_CONFIG_PATH)
        if not path.exists():
            logger.info(f"No config file at {path}, using defaults")
            return cls()
        try:
            config = json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid config JSON: {e.msg}", line=e.lineno) from e
        if not isinstance(config, dict):
            raise ParseError("config root must be an object")
        logger.info(f"📄 Loaded config from {path}")
        return cls(config)

    def _section(self, name: str) -> Dict[str, Any]:
        section = self.config.get(name, {})
        if not isinstance(section, dict):
            raise ParseError("config group must be an object", field=name)
        return section

    def _init_geometry_settings(self) -> GeometrySettings:
        """Initialize geometry thresholds"""
        geometry_config = self._section('geometry')

        return GeometrySettings(
            eps_motion=geometry_config.get('eps_motion', GeometryConstants.EPS_MOTION),
            eps_parallel=geometry_config.get('eps_parallel', GeometryConstants.EPS_PARALLEL),
            coincident_tolerance=geometry_config.get('coincident_tolerance', GeometryConstants.COINCIDENT_TOLERANCE),
            ideal_tolerance=geometry_config.get('ideal_tolerance', GeometryConstants.IDEAL_TOLERANCE),
            degenerate_eigenvalue=geometry_config.get('degenerate_eigenvalue', GeometryConstants.DEGENERATE_EIGENVALUE)
        )

    def _init_simulation_settings(self) -> SimulationSettings:
        """Initialize synthetic scene defaults"""
        simulation_config = self._section('simulation')

        return SimulationSettings(
            default_radius=simulation_config.get('default_radius', SimulationConstants.DEFAULT_RADIUS),
            default_n_points=simulation_config.get('default_n_points', SimulationConstants.DEFAULT_N_POINTS),
            default_focal_length=simulation_config.get('default_focal_length', SimulationConstants.DEFAULT_FOCAL_LENGTH),
            track_id_offset=simulation_config.get('track_id_offset', SimulationConstants.TRACK_ID_OFFSET)
        )

    def _init_verification_settings(self) -> VerificationSettings:
        """Initialize verification thresholds"""
        verification_config = self._section('verification')

        return VerificationSettings(
            scale_tolerance=verification_config.get('scale_tolerance', VerificationConstants.SCALE_TOLERANCE),
            rmse_tolerance=verification_config.get('rmse_tolerance', VerificationConstants.RMSE_TOLERANCE),
            depth_tolerance=verification_config.get('depth_tolerance', VerificationConstants.DEPTH_TOLERANCE)
        )

    def _init_export_settings(self) -> ExportSettings:
        """Initialize export formatting"""
        export_config = self._section('export')

        return ExportSettings(
            float_format=export_config.get('float_format', ExportConstants.FLOAT_FORMAT),
            ply_color=_color(export_config.get('ply_color', ExportConstants.PLY_COLOR)),
            anchor_color=_color(export_config.get('anchor_color', ExportConstants.ANCHOR_COLOR))
        )

    def get_config_summary(self) -> Dict[str, Any]:
        """Get a summary of current settings"""
        return {
            'geometry': {
                'eps_motion': self.geometry.eps_motion,
                'eps_parallel': self.geometry.eps_parallel,
                'coincident_tolerance': self.geometry.coincident_tolerance,
                'ideal_tolerance': self.geometry.ideal_tolerance,
                'degenerate_eigenvalue': self.geometry.degenerate_eigenvalue
            },
            'simulation': {
                'default_radius': self.simulation.default_radius,
                'default_n_points': self.simulation.default_n_points,
                'default_focal_length': self.simulation.default_focal_length,
                'track_id_offset': self.simulation.track_id_offset
            },
            'verification': {
                'scale_tolerance': self.verification.scale_tolerance,
                'rmse_tolerance': self.verification.rmse_tolerance,
                'depth_tolerance': self.verification.depth_tolerance
            },
            'export': {
                'float_format': self.export.float_format,
                'ply_color': list(self.export.ply_color),
                'anchor_color': list(self.export.anchor_color)
            }
        }

    def validate_settings(self) -> List[str]:
        """Validate settings and return list of issues"""
        issues = []

        # Types first; range checks below only look at well-typed values
        numeric = {
            'Geometry': (self.geometry, ('eps_motion', 'eps_parallel', 'coincident_tolerance',
                                         'ideal_tolerance', 'degenerate_eigenvalue')),
            'Simulation': (self.simulation, ('default_radius', 'default_focal_length')),
            'Verification': (self.verification, ('scale_tolerance', 'rmse_tolerance', 'depth_tolerance')),
        }
        mistyped = set()
        for group, (section, names) in numeric.items():
            for name in names:
                if not _is_number(getattr(section, name)):
                    issues.append(f"{group} {name} must be a number")
                    mistyped.add(name)
        for name in ('default_n_points', 'track_id_offset'):
            if not _is_integer(getattr(self.simulation, name)):
                issues.append(f"Simulation {name} must be an integer")
                mistyped.add(name)

        # Geometry thresholds
        for name in numeric['Geometry'][1]:
            if name not in mistyped and getattr(self.geometry, name) <= 0:
                issues.append(f"Geometry {name} must be positive")

        if 'eps_parallel' not in mistyped and self.geometry.eps_parallel >= 1:
            issues.append("Geometry eps_parallel is a sine and must be below 1")

        # Simulation defaults
        if 'default_radius' not in mistyped and self.simulation.default_radius <= 0:
            issues.append("Default sphere radius must be positive")

        if 'default_n_points' not in mistyped and self.simulation.default_n_points < 2:
            issues.append("Default sphere point count must be at least 2")

        if 'default_focal_length' not in mistyped and self.simulation.default_focal_length <= 0:
            issues.append("Default focal length must be positive")

        if 'track_id_offset' not in mistyped and self.simulation.track_id_offset < 1:
            issues.append("Track id offset must be positive")

        # Verification thresholds
        for name in numeric['Verification'][1]:
            if name not in mistyped and getattr(self.verification, name) < 0:
                issues.append(f"Verification {name} must be non-negative")

        # Export
        if not isinstance(self.export.float_format, str):
            issues.append("Export float_format must be a string")
        else:
            try:
                self.export.float_format % 1.0
            except (TypeError, ValueError):
                issues.append(f"Export float_format '{self.export.float_format}' is not a valid %-format")

        for name in ('ply_color', 'anchor_color'):
            color = getattr(self.export, name)
            if (not isinstance(color, tuple) or len(color) != 3
                    or any(not _is_integer(c) or not 0 <= c <= 255 for c in color)):
                issues.append(f"Export {name} must be three integers in 0..255")

        return issues


def _color(value: Any) -> Any:
    return tuple(value) if isinstance(value, (list, tuple)) else value


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_integer(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)
