"""
Per-stage timing and run counters
"""

import threading
from collections import defaultdict
from typing import Any, Dict, List, Mapping

import numpy as np
import pandas as pd


class StageMetrics:
    """
    Track per-stage frame timings and run counters
    """

    def __init__(self):
        self._counters: Dict[str, int] = defaultdict(int)
        self._histograms: Dict[str, List[float]] = defaultdict(list)
        self._frame_totals: List[float] = []
        self._lock = threading.Lock()

    def record_frame(self, stage_times_ms: Mapping[str, float]) -> None:
        """Record one frame's stage breakdown"""
        with self._lock:
            for stage, ms in stage_times_ms.items():
                self._histograms[stage].append(float(ms))
            self._frame_totals.append(float(sum(stage_times_ms.values())))
            self._counters["frames_processed"] += 1

    def increment_counter(self, name: str, value: int = 1) -> None:
        with self._lock:
            self._counters[name] += value

    @property
    def counters(self) -> Dict[str, int]:
        return dict(self._counters)

    def stage_frame(self) -> pd.DataFrame:
        """Stage timing summary, one row per stage plus a `total` row"""
        rows = []
        for stage, values in self._histograms.items():
            rows.append(self._summarize(stage, values))
        if self._frame_totals:
            rows.append(self._summarize("total", self._frame_totals))
        columns = ["stage", "count", "mean_ms", "median_ms", "p95_ms", "min_ms", "max_ms"]
        return pd.DataFrame(rows, columns=columns)

    def fps(self) -> float:
        """Frames per second implied by the mean total frame time"""
        if not self._frame_totals:
            return 0.0
        mean_ms = float(np.mean(self._frame_totals))
        return 1000.0 / mean_ms if mean_ms > 0 else float("inf")

    def get_metrics_summary(self) -> Dict[str, Any]:
        """Counters, fps and mean milliseconds per stage for the run summary"""
        stages = self.stage_frame()
        return {
            "counters": self.counters,
            "fps": round(self.fps(), 2),
            "stage_mean_ms": {
                row.stage: round(row.mean_ms, 3) for row in stages.itertuples() if row.stage != "total"
            },
        }

    @staticmethod
    def _summarize(stage: str, values: List[float]) -> Dict[str, Any]:
        arr = np.asarray(values, dtype=float)
        return {
            "stage": stage,
            "count": int(arr.size),
            "mean_ms": float(arr.mean()),
            "median_ms": float(np.median(arr)),
            "p95_ms": float(np.percentile(arr, 95)),
            "min_ms": float(arr.min()),
            "max_ms": float(arr.max()),
        }
