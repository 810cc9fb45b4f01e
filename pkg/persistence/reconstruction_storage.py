"""
Reconstruction Document Storage

JSON document holding the camera, every reconstructed track with its
per-step diagnostics, and the vanishing point (or failure) of every
(object, interval). Floats are written in shortest round-trip form, NaN as null.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

from common.enums import StepStatus
from common.exceptions import EmptyInput, IoError, ParseError, ValidationError
from common.serialization import dumps
from estimation.vanishing_point import VpEstimate
from geometry.camera import Camera
from reconstruction.models import ReconTrack, Reconstruction, StepRecord

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


def reconstruction_to_dict(recon: Reconstruction) -> Dict[str, Any]:
    """Document form of a reconstruction; keys and lists in id order"""
    return {
        'format_version': FORMAT_VERSION,
        'camera': recon.camera.to_dict(),
        'summary': recon.get_summary(),
        'tracks': [
            {
                'track_id': track.id,
                'object_id': track.object_id,
                'frames': track.frames,
                'points': track.points,
                'steps': [record.to_dict() for record in track.steps],
            }
            for track in sorted(recon.tracks, key=lambda t: t.id)
        ],
        'interval_vps': [
            {'object_id': object_id, 'interval': interval, **recon.interval_vps[(object_id, interval)].to_dict()}
            for object_id, interval in sorted(recon.interval_vps)
        ],
        'interval_failures': [
            {'object_id': object_id, 'interval': interval,
             'status': recon.interval_failures[(object_id, interval)].value}
            for object_id, interval in sorted(recon.interval_failures)
        ],
    }


def reconstruction_from_dict(data: Dict[str, Any]) -> Reconstruction:
    """
    Inverse of reconstruction_to_dict.

    Raises:
        ParseError: a required key is missing or has the wrong type
    """
    try:
        recon = Reconstruction(camera=Camera.from_dict(data['camera']))
        for doc in data['tracks']:
            recon.tracks.append(ReconTrack(
                id=int(doc['track_id']),
                object_id=int(doc['object_id']),
                frames=doc['frames'],
                points=doc['points'],
                steps=[StepRecord.from_dict(step) for step in doc.get('steps', [])],
            ))
        for doc in data.get('interval_vps', []):
            recon.interval_vps[(int(doc['object_id']), int(doc['interval']))] = VpEstimate.from_dict(doc)
        for doc in data.get('interval_failures', []):
            recon.interval_failures[(int(doc['object_id']), int(doc['interval']))] = StepStatus(doc['status'])
    except KeyError as e:
        raise ParseError("missing required field", field=str(e.args[0])) from e
    except ValidationError:
        raise
    except (TypeError, ValueError) as e:
        raise ParseError(f"malformed reconstruction document: {e}") from e

    recon.tracks.sort(key=lambda t: t.id)
    return recon


def write_reconstruction(path: Union[str, Path], recon: Reconstruction):
    """
    Write the reconstruction document.

    Raises:
        EmptyInput: the reconstruction holds no points (nothing is written)
        IoError: filesystem failure
    """
    if recon.is_empty:
        raise EmptyInput("reconstruction is empty, nothing to write")
    try:
        Path(path).write_text(dumps(reconstruction_to_dict(recon)))
    except OSError as e:
        raise IoError(f"cannot write reconstruction {path}: {e}") from e
    logger.info(f"💾 Wrote reconstruction of {len(recon.tracks)} tracks to {Path(path).name}")


def parse_reconstruction(path: Union[str, Path]) -> Reconstruction:
    """Read a reconstruction document written by write_reconstruction"""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"cannot read reconstruction {path}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid reconstruction document: {e.msg}", line=e.lineno) from e
    if not isinstance(data, dict):
        raise ParseError("reconstruction document must be an object")

    recon = reconstruction_from_dict(data)
    logger.info(f"📄 Loaded reconstruction of {len(recon.tracks)} tracks from {path.name}")
    return recon
