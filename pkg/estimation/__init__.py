"""
Estimation Module
Vanishing point estimation from inter-frame motion lines
"""

from .vanishing_point import (
    MotionPair,
    VpEstimate,
    motion_lines,
    estimate_vp,
    estimate_vp_from_rows,
    estimate_vp_pairwise,
    analytic_vp,
)

__all__ = [
    'MotionPair',
    'VpEstimate',
    'motion_lines',
    'estimate_vp',
    'estimate_vp_from_rows',
    'estimate_vp_pairwise',
    'analytic_vp',
]
