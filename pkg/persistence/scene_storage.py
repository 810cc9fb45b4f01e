"""
Scene Document Storage

Scene documents are JSON objects:

    {
      "camera": {"focal_length": 1.0, "principal_point": [0, 0]},
      "n_frames": 4,
      "noise_sigma": 0.0,
      "seed": 7,
      "objects": [
        {"object_id": 1,
         "shape": {"type": "sphere", "center": [0, 10, 20], "radius": 2, "n_points": 200},
         "waypoints": [[0, 10, 20], [0, 8, 24], [2, 8, 22], [4, 5, 26]]}
      ]
    }

Unknown keys are rejected at every level.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

from common.enums import ShapeKind, SimulationConstants
from common.exceptions import IoError, ParseError, ValidationError
from config.settings import SimulationSettings
from geometry.camera import Camera
from simulation.scene import (
    KeyframeShape,
    ObjectSpec,
    PointCloudShape,
    SceneSpec,
    SphereShape,
    Spin,
)

logger = logging.getLogger(__name__)

SCENE_KEYS = {'camera', 'n_frames', 'noise_sigma', 'seed', 'objects'}
CAMERA_KEYS = {'focal_length', 'principal_point', 'image_half_extent'}
OBJECT_KEYS = {'object_id', 'shape', 'waypoints', 'spin'}
SPIN_KEYS = {'axis', 'degrees_per_frame'}
SHAPE_KEYS = {
    ShapeKind.SPHERE.value: {'type', 'center', 'radius', 'n_points', 'seed'},
    ShapeKind.POINTS.value: {'type', 'points'},
    ShapeKind.KEYFRAMES.value: {'type', 'frames'},
}


def _check_keys(data: Any, allowed: set, where: str, required: Iterable[str] = ()):
    if not isinstance(data, dict):
        raise ParseError(f"expected an object", field=where)
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ParseError(f"unknown field(s) {unknown}", field=f"{where}.{unknown[0]}" if where else unknown[0])
    for key in required:
        if key not in data:
            raise ParseError("missing required field", field=f"{where}.{key}" if where else key)


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"expected a number, got {value!r}", field=where)
    return float(value)


def _integer(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", field=where)
    return value


def _vector(value: Any, size: int, where: str) -> List[float]:
    if not isinstance(value, list) or len(value) != size:
        raise ParseError(f"expected a list of {size} numbers", field=where)
    return [_number(v, f"{where}[{i}]") for i, v in enumerate(value)]


def _vectors(value: Any, size: int, where: str) -> List[List[float]]:
    if not isinstance(value, list):
        raise ParseError(f"expected a list of {size}-vectors", field=where)
    return [_vector(v, size, f"{where}[{i}]") for i, v in enumerate(value)]


def _parse_camera(data: Any) -> Camera:
    _check_keys(data, CAMERA_KEYS, 'camera', required=('focal_length',))
    half_extent = data.get('image_half_extent')
    return Camera(
        f=_number(data['focal_length'], 'camera.focal_length'),
        principal_point=tuple(_vector(data.get('principal_point', [0.0, 0.0]), 2, 'camera.principal_point')),
        image_half_extent=None if half_extent is None else tuple(_vector(half_extent, 2, 'camera.image_half_extent')),
    )


def _parse_shape(data: Any, where: str, defaults: SimulationSettings):
    if not isinstance(data, dict) or 'type' not in data:
        raise ParseError("shape needs a 'type'", field=f"{where}.type")
    kind = data['type']
    if kind not in SHAPE_KEYS:
        raise ParseError(f"unknown shape type {kind!r}", field=f"{where}.type")
    _check_keys(data, SHAPE_KEYS[kind], where)

    if kind == ShapeKind.SPHERE.value:
        if 'center' not in data:
            raise ParseError("missing required field", field=f"{where}.center")
        return SphereShape(
            center=_vector(data['center'], 3, f"{where}.center"),
            radius=_number(data.get('radius', defaults.default_radius), f"{where}.radius"),
            n_points=_integer(data.get('n_points', defaults.default_n_points), f"{where}.n_points"),
            seed=_integer(data.get('seed', SimulationConstants.DEFAULT_SEED), f"{where}.seed"),
        )
    if kind == ShapeKind.POINTS.value:
        return PointCloudShape(points=_vectors(data.get('points'), 3, f"{where}.points"))

    frames = data.get('frames')
    if not isinstance(frames, list):
        raise ParseError("expected a list of per-frame point lists", field=f"{where}.frames")
    return KeyframeShape(frames=[_vectors(f, 3, f"{where}.frames[{i}]") for i, f in enumerate(frames)])


def _parse_object(data: Any, index: int, defaults: SimulationSettings) -> ObjectSpec:
    where = f"objects[{index}]"
    _check_keys(data, OBJECT_KEYS, where, required=('object_id', 'shape'))
    spin = None
    if data.get('spin') is not None:
        _check_keys(data['spin'], SPIN_KEYS, f"{where}.spin", required=SPIN_KEYS)
        spin = Spin(
            axis=_vector(data['spin']['axis'], 3, f"{where}.spin.axis"),
            degrees_per_frame=_number(data['spin']['degrees_per_frame'], f"{where}.spin.degrees_per_frame"),
        )
    waypoints = data.get('waypoints')
    return ObjectSpec(
        object_id=_integer(data['object_id'], f"{where}.object_id"),
        shape=_parse_shape(data['shape'], f"{where}.shape", defaults),
        waypoints=None if waypoints is None else _vectors(waypoints, 3, f"{where}.waypoints"),
        spin=spin,
    )


def scene_from_dict(data: Dict[str, Any], defaults: Optional[SimulationSettings] = None) -> SceneSpec:
    """
    Build and validate a SceneSpec from a parsed document.

    Spheres without a radius or n_points take them from `defaults`
    (the built-in SimulationSettings when None).

    Raises:
        ParseError: structural problems (unknown / missing / mistyped fields)
        ValidationError: SceneSpec invariants violated
    """
    defaults = defaults or SimulationSettings()
    _check_keys(data, SCENE_KEYS, '', required=('camera', 'n_frames', 'objects'))
    if not isinstance(data['objects'], list):
        raise ParseError("expected a list", field='objects')

    try:
        camera = _parse_camera(data['camera'])
    except ValidationError as e:
        raise ValidationError([f"camera: {issue}" for issue in e.issues]) from e

    spec = SceneSpec(
        camera=camera,
        objects=[_parse_object(obj, i, defaults) for i, obj in enumerate(data['objects'])],
        n_frames=_integer(data['n_frames'], 'n_frames'),
        noise_sigma=_number(data.get('noise_sigma', 0.0), 'noise_sigma'),
        seed=_integer(data.get('seed', SimulationConstants.DEFAULT_SEED), 'seed'),
    )
    issues = spec.validate()
    if issues:
        raise ValidationError(issues)
    return spec


def parse_scene(path: Union[str, Path], defaults: Optional[SimulationSettings] = None) -> SceneSpec:
    """Read and validate a scene document"""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"cannot read scene file {path}: {e}") from e

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid scene document: {e.msg}", line=e.lineno) from e

    spec = scene_from_dict(data, defaults)
    logger.info(f"📄 Loaded scene {path.name}: {len(spec.objects)} objects, {spec.n_frames} frames")
    return spec


def scene_to_dict(spec: SceneSpec) -> Dict[str, Any]:
    """Inverse of scene_from_dict"""
    objects = []
    for obj in spec.objects:
        shape = obj.shape
        if isinstance(shape, SphereShape):
            shape_doc = {'type': ShapeKind.SPHERE.value, 'center': shape.center.tolist(),
                         'radius': shape.radius, 'n_points': shape.n_points, 'seed': shape.seed}
        elif isinstance(shape, PointCloudShape):
            shape_doc = {'type': ShapeKind.POINTS.value, 'points': shape.points.tolist()}
        else:
            shape_doc = {'type': ShapeKind.KEYFRAMES.value, 'frames': [f.tolist() for f in shape.frames]}

        doc = {'object_id': int(obj.object_id), 'shape': shape_doc}
        if obj.waypoints is not None:
            doc['waypoints'] = obj.waypoints.tolist()
        if obj.spin is not None:
            doc['spin'] = {'axis': obj.spin.axis.tolist(), 'degrees_per_frame': obj.spin.degrees_per_frame}
        objects.append(doc)

    return {
        'camera': spec.camera.to_dict(),
        'n_frames': spec.n_frames,
        'noise_sigma': spec.noise_sigma,
        'seed': int(spec.seed),
        'objects': objects,
    }


def write_scene(path: Union[str, Path], spec: SceneSpec):
    """Write a scene document"""
    try:
        Path(path).write_text(json.dumps(scene_to_dict(spec), indent=2) + "\n")
    except OSError as e:
        raise IoError(f"cannot write scene {path}: {e}") from e
