"""
Segmentation runs over frame sequences
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import orjson
import pandas as pd
import structlog

from app.config import PipelineSettings
from app.services.frames import discover_frames, select_frames
from classification.decision_tree import classify
from classification.model import ClassModel
from imaging.io import read_image, write_pgm
from monitoring.logging import bind_frame, clear_frame
from monitoring.metrics import StageMetrics
from pipeline.methods import run_method
from pipeline.result import ENERGY_COLUMNS, FrameResult
from segraph.graph import dump_edges

logger = structlog.get_logger()

RECORD_FIELDS = (
    "frame_index",
    "segment_id",
    "pixel_count",
    "bbox",
    "centroid",
    "tier",
    "class",
    "score",
)


@dataclass
class RunSummary:
    frames_ok: int = 0
    frames_failed: int = 0
    segments: int = 0
    outputs: List[Path] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.frames_failed == 0


def segment_records(result: FrameResult, frame_dims: Tuple[int, int],
                    model: Optional[ClassModel] = None) -> List[Dict[str, Any]]:
    """One record per segment, keys in RECORD_FIELDS order"""
    records = []
    for seg in result.segments:
        label, score = None, None
        if model is not None:
            label, score = classify(seg, model, frame_dims)
            label, score = label.value, round(float(score), 6)
        records.append({
            "frame_index": result.frame_index,
            "segment_id": seg.id,
            "pixel_count": seg.pixel_count,
            "bbox": list(seg.bbox),
            "centroid": [round(seg.centroid[0], 4), round(seg.centroid[1], 4)],
            "tier": list(seg.tier) if seg.tier is not None else None,
            "class": label,
            "score": score,
        })
    return records


def write_frame_rows(rows: List[Dict[str, Any]], path: Path) -> Path:
    """Per-frame timings and energies, energies at six decimals"""
    columns = ["frame_index", "method", "segments", "layer1_segments", "total_ms"]
    columns += [f"energy_{name}" for name in ENERGY_COLUMNS]
    frame = pd.DataFrame(rows, columns=columns)
    frame["layer1_segments"] = frame["layer1_segments"].astype("Int64")
    frame.to_csv(path, index=False, float_format="%.6f", lineterminator="\n")
    return path


class SegmentationService:
    """Run one hierarchy method over a frame sequence and write its outputs"""

    def __init__(self, settings: PipelineSettings, metrics: Optional[StageMetrics] = None,
                 model: Optional[ClassModel] = None, dump_graph: bool = False):
        self.settings = settings
        self.metrics = metrics or StageMetrics()
        self.model = model
        self.dump_graph = dump_graph

    def _process(self, item: Tuple[int, Path]) -> Optional[Tuple[FrameResult, Tuple[int, int]]]:
        index, path = item
        bind_frame(index, self.settings.method)
        try:
            frame = read_image(path)
            result = run_method(frame, self.settings, index)
            self.metrics.record_frame(result.per_stage_times)
            return result, (frame.width, frame.height)
        except Exception as e:
            logger.error("Frame failed", path=str(path), error=str(e), exc_info=True)
            self.metrics.increment_counter("frames_failed")
            return None
        finally:
            clear_frame()

    def results(
        self, selected: Sequence[Tuple[int, Path]]
    ) -> Iterator[Optional[Tuple[FrameResult, Tuple[int, int]]]]:
        """Per-frame results in frame order, whatever order they finish in"""
        if self.settings.threads > 1:
            with ThreadPoolExecutor(max_workers=self.settings.threads) as pool:
                yield from pool.map(self._process, selected)
        else:
            for item in selected:
                yield self._process(item)

    def run(self, source: Path) -> RunSummary:
        out = Path(self.settings.out)
        (out / "masks").mkdir(parents=True, exist_ok=True)
        (out / "labels").mkdir(parents=True, exist_ok=True)
        selected = select_frames(discover_frames(source), self.settings.stride)
        records_path = out / "segments.jsonl"
        frames_path = out / "frames.csv"
        summary = RunSummary(outputs=[records_path, frames_path])
        rows: List[Dict[str, Any]] = []

        logger.info("Segmentation started", frames=len(selected), method=self.settings.method,
                    threads=self.settings.threads, stride=self.settings.stride)
        with open(records_path, "wb") as records:
            for item in self.results(selected):
                if item is None:
                    summary.frames_failed += 1
                    continue
                result, dims = item
                summary.outputs.append(self._write_frame(out, result))
                for record in segment_records(result, dims, self.model):
                    records.write(orjson.dumps(record, option=orjson.OPT_APPEND_NEWLINE))
                rows.append(result.energy_row())
                summary.frames_ok += 1
                summary.segments += len(result.segments)
                self.metrics.increment_counter("segments_emitted", len(result.segments))

        write_frame_rows(rows, frames_path)
        logger.info("Segmentation finished", frames_ok=summary.frames_ok,
                    frames_failed=summary.frames_failed, segments=summary.segments)
        return summary

    def _write_frame(self, out: Path, result: FrameResult) -> Path:
        mask_path = write_pgm(result.foreground_mask, out / "masks" / f"frame_{result.frame_index:05d}.pgm")
        write_pgm(result.class_mask(), out / "labels" / f"frame_{result.frame_index:05d}.pgm")
        if self.dump_graph and result.graph is not None:
            graph_path = out / "graphs" / f"frame_{result.frame_index:05d}.txt"
            graph_path.parent.mkdir(parents=True, exist_ok=True)
            with open(graph_path, "w") as stream:
                dump_edges(result.graph, stream)
        return mask_path
