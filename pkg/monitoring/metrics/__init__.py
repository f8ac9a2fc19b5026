"""
Run metrics
"""

from .custom_metrics import StageMetrics

__all__ = ["StageMetrics"]
