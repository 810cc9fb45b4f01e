"""
Track Table Storage

Tracks travel as comma-separated tables with the header
`track_id,object_id,frame,u,v`, rows sorted by (track_id, frame) and floats
written with 17 significant digits so a write/parse cycle is bit-exact.
"""

import logging
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np
import pandas as pd

from common.enums import ExportConstants
from common.exceptions import IoError, NonContiguousFrames, ParseError
from reconstruction.models import Track

logger = logging.getLogger(__name__)

KEY_COLUMNS = ['track_id', 'frame']
ID_COLUMNS = ['track_id', 'object_id', 'frame']


def read_table(path: Union[str, Path], columns: List[str]) -> pd.DataFrame:
    """
    Read a keyed observation table and check its shape.

    Returns the rows sorted by (track_id, frame) with a fresh index. The
    number of rows that were out of order is stored in
    `DataFrame.attrs['unsorted_rows']`.

    Raises:
        ParseError: unreadable file, wrong header, bad values or a duplicate key
    """
    path = Path(path)
    try:
        df = pd.read_csv(path, dtype=str, keep_default_na=False)
    except FileNotFoundError as e:
        raise ParseError(f"no such file: {path}") from e
    except pd.errors.EmptyDataError as e:
        raise ParseError(f"{path} is empty", line=1) from e
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise ParseError(f"cannot parse {path}: {e}") from e

    if list(df.columns) != columns:
        raise ParseError(f"expected header {','.join(columns)}, got {','.join(map(str, df.columns))}", line=1)

    # Data rows start on line 2
    for column in columns:
        kind = int if column in ID_COLUMNS else float
        values = []
        for index, text in enumerate(df[column]):
            try:
                value = kind(text)
            except ValueError:
                raise ParseError(f"bad {kind.__name__} {text!r}", line=index + 2, field=column) from None
            if kind is float and not np.isfinite(value):
                raise ParseError(f"non-finite value {text!r}", line=index + 2, field=column)
            values.append(value)
        df[column] = pd.Series(values, dtype=np.int64 if kind is int else np.float64)

    duplicated = df.duplicated(KEY_COLUMNS)
    if duplicated.any():
        index = int(np.flatnonzero(duplicated.to_numpy())[0])
        row = df.iloc[index]
        raise ParseError(f"duplicate row for track {row['track_id']} frame {row['frame']}", line=index + 2)

    order = np.lexsort((df['frame'].to_numpy(), df['track_id'].to_numpy()))
    unsorted_rows = int(np.count_nonzero(order != np.arange(len(df))))
    df = df.iloc[order].reset_index(drop=True)
    df.attrs['unsorted_rows'] = unsorted_rows
    if unsorted_rows:
        logger.warning(f"⚠️ {path.name}: {unsorted_rows} rows out of (track_id, frame) order, sorted on load")
    return df


def split_tracks(df: pd.DataFrame) -> List[tuple]:
    """
    Group a sorted observation table by track.

    Returns (track_id, object_id, frames, values) tuples in id order.

    Raises:
        ParseError: a track changes object_id
        NonContiguousFrames: some tracks skip frames
    """
    groups = []
    gaps = []
    value_columns = [c for c in df.columns if c not in ID_COLUMNS]
    for track_id, group in df.groupby('track_id', sort=True):
        objects = group['object_id'].unique()
        if len(objects) != 1:
            raise ParseError(f"track {track_id} belongs to objects {sorted(objects.tolist())}",
                             field='object_id')
        frames = group['frame'].to_numpy()
        if len(frames) > 1 and np.any(np.diff(frames) != 1):
            gaps.append(int(track_id))
        groups.append((int(track_id), int(objects[0]), frames, group[value_columns].to_numpy()))

    if gaps:
        raise NonContiguousFrames(gaps)
    return groups


def write_table(path: Union[str, Path], df: pd.DataFrame, float_format: str):
    """Write a table with LF line endings"""
    try:
        df.to_csv(path, index=False, float_format=float_format, lineterminator='\n')
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from e


class TrackTableStorage:
    """
    Reads and writes Track tables.

    `unsorted_rows` holds the count from the most recent parse.
    """

    def __init__(self, float_format: str = ExportConstants.FLOAT_FORMAT):
        self.float_format = float_format
        self.unsorted_rows = 0

    def parse(self, path: Union[str, Path]) -> List[Track]:
        df = read_table(path, ExportConstants.TRACK_COLUMNS)
        self.unsorted_rows = df.attrs['unsorted_rows']
        tracks = [Track(track_id, object_id, frames, points)
                  for track_id, object_id, frames, points in split_tracks(df)]
        logger.info(f"📄 Loaded {len(tracks)} tracks ({len(df)} observations) from {Path(path).name}")
        return tracks

    def to_dataframe(self, tracks: Sequence[Track]) -> pd.DataFrame:
        rows = {column: [] for column in ExportConstants.TRACK_COLUMNS}
        for track in sorted(tracks, key=lambda t: t.id):
            n = len(track)
            rows['track_id'].append(np.full(n, track.id, dtype=np.int64))
            rows['object_id'].append(np.full(n, track.object_id, dtype=np.int64))
            rows['frame'].append(track.frames)
            rows['u'].append(track.points[:, 0])
            rows['v'].append(track.points[:, 1])
        return pd.DataFrame({
            column: np.concatenate(parts) if parts else np.array([], dtype=np.float64 if column in ('u', 'v') else np.int64)
            for column, parts in rows.items()
        })

    def write(self, path: Union[str, Path], tracks: Sequence[Track]):
        write_table(path, self.to_dataframe(tracks), self.float_format)
        logger.info(f"💾 Wrote {len(tracks)} tracks to {Path(path).name}")


def parse_tracks(path: Union[str, Path]) -> List[Track]:
    """Read a track table"""
    return TrackTableStorage().parse(path)


def write_tracks(path: Union[str, Path], tracks: Sequence[Track], float_format: str = ExportConstants.FLOAT_FORMAT):
    """Write a track table"""
    TrackTableStorage(float_format).write(path, tracks)
