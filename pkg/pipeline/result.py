"""
Per-frame segmentation result and stage timing
"""

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional

import numpy as np

from imaging.components import Segment
from imaging.raster import BinaryMask
from segraph.graph import SegmentGraph

ENERGY_COLUMNS = ("layer1", "layer2", "graph")


@dataclass
class FrameResult:
    """Segmentation of one frame by one hierarchy method"""
    frame_index: int
    method: int
    foreground_mask: BinaryMask
    segments: List[Segment]
    per_stage_times: Dict[str, float] = field(default_factory=dict)
    layer1_segment_count: Optional[int] = None
    energies: Dict[str, float] = field(default_factory=dict)
    graph: Optional[SegmentGraph] = None

    @property
    def total_ms(self) -> float:
        return float(sum(self.per_stage_times.values()))

    def label_image(self) -> np.ndarray:
        """Segment id + 1 per pixel, 0 outside every segment"""
        out = np.zeros(self.foreground_mask.shape, dtype=np.int32)
        for seg in self.segments:
            out[seg.pixels[:, 1], seg.pixels[:, 0]] = seg.id + 1
        return out

    def class_mask(self) -> BinaryMask:
        """Pixels of segments labelled +1"""
        bits = np.zeros(self.foreground_mask.shape, dtype=bool)
        for seg in self.segments:
            if seg.label == 1:
                bits[seg.pixels[:, 1], seg.pixels[:, 0]] = True
        return BinaryMask(bits & self.foreground_mask.bits)

    def energy_row(self) -> Dict[str, Optional[float]]:
        """Per-frame summary row with one column per energy name in ENERGY_COLUMNS"""
        row: Dict[str, Optional[float]] = {
            "frame_index": self.frame_index,
            "method": self.method,
            "segments": len(self.segments),
            "layer1_segments": self.layer1_segment_count,
            "total_ms": self.total_ms,
        }
        for name in ENERGY_COLUMNS:
            row[f"energy_{name}"] = self.energies.get(name)
        return row


class StageClock:
    """Accumulates wall time per named stage in milliseconds"""

    def __init__(self):
        self.times: Dict[str, float] = {}

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = (time.perf_counter() - start) * 1000.0
            self.times[name] = self.times.get(name, 0.0) + elapsed
