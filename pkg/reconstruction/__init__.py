"""
Reconstruction Module
Chained per-frame 3D reconstruction of keypoint tracks
"""

from .models import Track, StepRecord, ReconTrack, Reconstruction
from .reconstructor import (
    anchor,
    step,
    interval_pairs,
    reconstruct_sequence,
    Reconstructor,
)

__all__ = [
    'Track',
    'StepRecord',
    'ReconTrack',
    'Reconstruction',
    'anchor',
    'step',
    'interval_pairs',
    'reconstruct_sequence',
    'Reconstructor',
]
