"""
Ground-truth tables: `track_id,object_id,frame,x,y,z`, same conventions as track tables.
"""

import logging
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from common.enums import ExportConstants
from simulation.simulation_engine import GroundTruth, TruthTrack
from .track_storage import read_table, split_tracks, write_table

logger = logging.getLogger(__name__)


def truth_to_dataframe(truth: GroundTruth) -> pd.DataFrame:
    frames = []
    for track_id in sorted(truth.tracks):
        track = truth[track_id]
        n = len(track.frames)
        frames.append(pd.DataFrame({
            'track_id': np.full(n, track_id, dtype=np.int64),
            'object_id': np.full(n, track.object_id, dtype=np.int64),
            'frame': track.frames,
            'x': track.points[:, 0],
            'y': track.points[:, 1],
            'z': track.points[:, 2],
        }))
    if not frames:
        return pd.DataFrame({column: [] for column in ExportConstants.TRUTH_COLUMNS})
    return pd.concat(frames, ignore_index=True)


def write_truth(path: Union[str, Path], truth: GroundTruth, float_format: str = ExportConstants.FLOAT_FORMAT):
    """Write ground truth trajectories"""
    write_table(path, truth_to_dataframe(truth), float_format)
    logger.info(f"💾 Wrote ground truth for {len(truth)} tracks to {Path(path).name}")


def parse_truth(path: Union[str, Path]) -> GroundTruth:
    """
    Read ground truth trajectories.

    Raises:
        ParseError, NonContiguousFrames: as for track tables
    """
    df = read_table(path, ExportConstants.TRUTH_COLUMNS)
    truth = GroundTruth({
        track_id: TruthTrack(track_id, object_id, frames, points)
        for track_id, object_id, frames, points in split_tracks(df)
    })
    logger.info(f"📄 Loaded ground truth for {len(truth)} tracks from {Path(path).name}")
    return truth
