"""
End-to-end hierarchy methods
"""

from pipeline.methods import run_method, run_method1, run_method2, single_layer_segments
from pipeline.preprocess import Preprocessed, preprocess, preprocess_planes
from pipeline.result import FrameResult, StageClock

__all__ = [
    "FrameResult",
    "Preprocessed",
    "StageClock",
    "preprocess",
    "preprocess_planes",
    "run_method",
    "run_method1",
    "run_method2",
    "single_layer_segments",
]
