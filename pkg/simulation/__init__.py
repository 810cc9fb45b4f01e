"""
Simulation Module
Synthetic rigid-object scenes, projected into keypoint tracks with ground truth
"""

from .scene import (
    SphereShape,
    PointCloudShape,
    KeyframeShape,
    Spin,
    ObjectSpec,
    SceneSpec,
    make_sphere_cloud,
    base_cloud,
    pose_at_frame,
)
from .noise import track_noise, noise_at
from .simulation_engine import (
    TruthTrack,
    GroundTruth,
    SimulationResult,
    SimulationEngine,
    render_tracks,
    simulate,
    true_scale,
)

__all__ = [
    'SphereShape',
    'PointCloudShape',
    'KeyframeShape',
    'Spin',
    'ObjectSpec',
    'SceneSpec',
    'make_sphere_cloud',
    'base_cloud',
    'pose_at_frame',
    'track_noise',
    'noise_at',
    'TruthTrack',
    'GroundTruth',
    'SimulationResult',
    'SimulationEngine',
    'render_tracks',
    'simulate',
    'true_scale',
]
