"""
Verification of reconstructions against ground truth.
"""

from .metrics_calculator import (
    DepthAudit,
    IntervalMetrics,
    MetricsCalculator,
    TrackMetrics,
    VerifyReport,
    depth_audit,
    fit_scale,
    verify,
    write_report,
)

__all__ = [
    "DepthAudit",
    "IntervalMetrics",
    "MetricsCalculator",
    "TrackMetrics",
    "VerifyReport",
    "depth_audit",
    "fit_scale",
    "verify",
    "write_report",
]
