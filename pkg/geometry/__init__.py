"""
Geometry Module
Pinhole projection, homogeneous line algebra and ray/line triangulation
"""

from .camera import (
    Camera,
    Ray3,
    project,
    project_many,
    embed,
    backproject_ray,
    backproject_dirs,
)
from .homogeneous import (
    HomPoint2,
    HomLine2,
    canonical_distance,
    image_line_through,
    lines_through_rows,
    intersect_lines,
    direction_from_vp,
)
from .triangulation import (
    TriangulationResult,
    TriangulationBatch,
    triangulate,
    triangulate_batch,
)

__all__ = [
    'Camera',
    'Ray3',
    'project',
    'project_many',
    'embed',
    'backproject_ray',
    'backproject_dirs',
    'HomPoint2',
    'HomLine2',
    'canonical_distance',
    'image_line_through',
    'lines_through_rows',
    'intersect_lines',
    'direction_from_vp',
    'TriangulationResult',
    'TriangulationBatch',
    'triangulate',
    'triangulate_batch',
]
