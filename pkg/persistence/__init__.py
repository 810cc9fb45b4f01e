"""
Persistence layer for scene documents, track and truth tables,
reconstruction documents and PLY exports.
"""

from .scene_storage import parse_scene, scene_from_dict, scene_to_dict, write_scene
from .track_storage import TrackTableStorage, parse_tracks, write_tracks
from .truth_storage import parse_truth, write_truth
from .reconstruction_storage import (
    parse_reconstruction,
    reconstruction_from_dict,
    reconstruction_to_dict,
    write_reconstruction,
)
from .ply_writer import ply_text, write_ply

__all__ = [
    "parse_scene",
    "scene_from_dict",
    "scene_to_dict",
    "write_scene",
    "TrackTableStorage",
    "parse_tracks",
    "write_tracks",
    "parse_truth",
    "write_truth",
    "parse_reconstruction",
    "reconstruction_from_dict",
    "reconstruction_to_dict",
    "write_reconstruction",
    "ply_text",
    "write_ply",
]
