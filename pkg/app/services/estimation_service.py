"""
Beta estimation against ground-truth masks
"""

from pathlib import Path
from typing import List, Sequence, Tuple

import structlog

from app.config import PipelineSettings
from app.core.exceptions import ImageIOException
from app.services.frames import discover_frames
from estimation.coding import DEFAULT_GRID, TrainingPair, estimate_beta, sweep_report
from estimation.report import EstimationReport
from imaging.color import luminance_plane
from imaging.io import read_image, read_mask
from mrf.fields import LabelField, normalize_gray

logger = structlog.get_logger()

DEFAULT_ITERATION_GRID = (1, 2, 3, 4, 5)


class EstimationService:
    """Pair observed images with truth masks and score a beta grid"""

    def __init__(self, settings: PipelineSettings):
        self.settings = settings

    def load_pairs(self, source: Path, truth_dir: Path) -> Tuple[List[str], List[TrainingPair]]:
        """Observed image and same-named truth mask per frame"""
        ids, pairs = [], []
        for path in discover_frames(source):
            truth_path = Path(truth_dir) / path.name
            if not truth_path.exists():
                raise ImageIOException(str(truth_path), "no truth mask for frame")
            data = normalize_gray(luminance_plane(read_image(path)))
            truth = LabelField.from_mask(read_mask(truth_path))
            ids.append(path.stem)
            pairs.append((data, truth))
        logger.info("Estimation pairs loaded", pairs=len(pairs))
        return ids, pairs

    def run(
        self,
        source: Path,
        truth_dir: Path,
        beta_grid: Sequence[float] = DEFAULT_GRID,
        iteration_grid: Sequence[int] = DEFAULT_ITERATION_GRID,
    ) -> Tuple[EstimationReport, EstimationReport]:
        ids, pairs = self.load_pairs(source, truth_dir)
        estimate = estimate_beta(pairs, beta_grid, self.settings.iterations,
                                 threads=self.settings.threads, image_ids=ids)
        sweep = sweep_report(pairs, beta_grid, iteration_grid,
                             threads=self.settings.threads, image_ids=ids)
        return estimate, sweep

    def write(self, estimate: EstimationReport, sweep: EstimationReport, out: Path) -> List[Path]:
        out = Path(out)
        written = [
            estimate.write_csv(out / "estimate.csv"),
            sweep.write_csv(out / "sweep.csv"),
        ]
        best = out / "best_beta.csv"
        estimate.best_frame().to_csv(best, index=False, float_format="%.10g", lineterminator="\n")
        written.append(best)
        logger.info("Estimation written", beta_star=estimate.beta_star, files=len(written))
        return written
