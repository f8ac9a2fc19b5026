"""
Throughput benchmark
"""

from pathlib import Path
from typing import Any, Dict

import pandas as pd
import structlog

from app.config import PipelineSettings
from app.services.frames import discover_frames, load_frames, select_frames
from monitoring.metrics import StageMetrics
from pipeline.methods import run_method

logger = structlog.get_logger()

# frames per second reported for the original Python implementation at 160x120
REFERENCE_FPS = {1: 11.0, 2: 6.0}


class BenchmarkService:
    """Time the pipeline on frames already held in memory"""

    def __init__(self, settings: PipelineSettings, metrics: StageMetrics = None):
        self.settings = settings
        self.metrics = metrics or StageMetrics()

    def run(self, source: Path, repeat: int = 1) -> Dict[str, Any]:
        frames = load_frames(select_frames(discover_frames(source), self.settings.stride))
        logger.info("Benchmark started", frames=len(frames), method=self.settings.method,
                    repeat=repeat)
        for _ in range(repeat):
            for index, frame in frames:
                result = run_method(frame, self.settings, index)
                self.metrics.record_frame(result.per_stage_times)

        report = {
            "method": self.settings.method,
            "frames": len(frames) * repeat,
            "fps": self.metrics.fps(),
            "reference_fps": REFERENCE_FPS[self.settings.method],
            "stages": self.metrics.stage_frame(),
        }
        logger.info("Benchmark finished", fps=round(report["fps"], 2),
                    reference_fps=report["reference_fps"])
        return report

    def write(self, report: Dict[str, Any], out: Path) -> Path:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        stages: pd.DataFrame = report["stages"].copy()
        stages.insert(0, "method", report["method"])
        stages["fps"] = report["fps"]
        stages["reference_fps"] = report["reference_fps"]
        path = out / f"bench_method{report['method']}.csv"
        stages.to_csv(path, index=False, float_format="%.4f", lineterminator="\n")
        return path
