"""
Smoothness-weight estimation
"""

from estimation.coding import (
    DEFAULT_GRID,
    estimate_beta,
    neg_log_likelihood,
    stationary_sweep,
    sweep_report,
)
from estimation.report import EstimationReport, snap_to_grid

__all__ = [
    "DEFAULT_GRID",
    "EstimationReport",
    "estimate_beta",
    "neg_log_likelihood",
    "snap_to_grid",
    "stationary_sweep",
    "sweep_report",
]
