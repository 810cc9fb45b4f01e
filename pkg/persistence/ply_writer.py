"""
ASCII PLY export for external point-cloud viewers.

One file per reconstructed frame (`frame_0000.ply`, ...) holding every point
alive at that frame, plus `anchors.ply` with the frame-0 anchors.
"""

import logging
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np

from common.enums import ExportConstants
from common.exceptions import EmptyInput, IoError
from reconstruction.models import Reconstruction

logger = logging.getLogger(__name__)

PLY_PROPERTIES = (
    'property double x',
    'property double y',
    'property double z',
    'property uchar red',
    'property uchar green',
    'property uchar blue',
)


def ply_text(points: np.ndarray, color: Sequence[int] = ExportConstants.PLY_COLOR,
             float_format: str = ExportConstants.FLOAT_FORMAT) -> str:
    """Render an (N, 3) array as an ASCII PLY document"""
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    rgb = ' '.join(str(int(c)) for c in color)
    lines = ['ply', 'format ascii 1.0', f'element vertex {len(points):d}', *PLY_PROPERTIES, 'end_header']
    for x, y, z in points:
        lines.append(f'{float_format % x} {float_format % y} {float_format % z} {rgb}')
    return '\n'.join(lines) + '\n'


def write_ply(directory: Union[str, Path], recon: Reconstruction,
              color: Tuple[int, int, int] = ExportConstants.PLY_COLOR,
              anchor_color: Tuple[int, int, int] = ExportConstants.ANCHOR_COLOR,
              float_format: str = ExportConstants.FLOAT_FORMAT) -> List[Path]:
    """
    Write per-frame point clouds and the anchor cloud.

    Returns:
        Paths written, frame files in frame order followed by anchors.ply

    Raises:
        EmptyInput: the reconstruction holds no points (nothing is written)
        IoError: filesystem failure
    """
    if recon.is_empty:
        raise EmptyInput("reconstruction is empty, no PLY files written")

    directory = Path(directory)
    documents = []
    for frame in recon.frames():
        _, points = recon.points_at_frame(frame)
        documents.append((directory / f'frame_{frame:04d}.ply', ply_text(points, color, float_format)))
    _, anchors = recon.anchors()
    documents.append((directory / 'anchors.ply', ply_text(anchors, anchor_color, float_format)))

    try:
        directory.mkdir(parents=True, exist_ok=True)
        for path, text in documents:
            path.write_text(text)
    except OSError as e:
        raise IoError(f"cannot write PLY files to {directory}: {e}") from e

    logger.info(f"💾 Wrote {len(documents)} PLY files to {directory}")
    return [path for path, _ in documents]
