"""
Estimation report and CSV export
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

CSV_COLUMNS = ["image_id", "beta", "iterations", "score", "flips_at_stationarity"]


@dataclass(frozen=True)
class EstimationReport:
    """
    Disagreement scores over a (image, beta, iterations) grid

    `scores[i, b, t]` is the score of image i after ICM with
    `beta_grid[b]` and `iteration_grid[t]` sweeps. `stationary_at[i]` is the
    sweep whose flip count first reached zero at the reference beta, or
    None when the sweep budget ran out first.
    """
    image_ids: Tuple[str, ...]
    beta_grid: Tuple[float, ...]
    iteration_grid: Tuple[int, ...]
    scores: np.ndarray
    best_betas: Tuple[float, ...]
    beta_star: float
    stationary_at: Tuple[Optional[int], ...] = ()

    @property
    def site_count(self) -> int:
        """Number of images averaged into beta_star"""
        return len(self.image_ids)

    @property
    def per_image_scores(self) -> np.ndarray:
        return self.scores

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for i, image_id in enumerate(self.image_ids):
            stationary = self.stationary_at[i] if i < len(self.stationary_at) else None
            for b, beta in enumerate(self.beta_grid):
                for t, iterations in enumerate(self.iteration_grid):
                    rows.append({
                        "image_id": image_id,
                        "beta": beta,
                        "iterations": iterations,
                        "score": float(self.scores[i, b, t]),
                        "flips_at_stationarity": stationary,
                    })
        frame = pd.DataFrame(rows, columns=CSV_COLUMNS)
        return frame.astype({"flips_at_stationarity": "Int64"})

    def write_csv(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False, float_format="%.10g", lineterminator="\n")
        return path

    def best_frame(self) -> pd.DataFrame:
        """Per-image best beta alongside beta_star"""
        return pd.DataFrame({
            "image_id": list(self.image_ids),
            "best_beta": list(self.best_betas),
            "beta_star": [self.beta_star] * len(self.image_ids),
        })


def snap_to_grid(value: float, grid: Sequence[float]) -> float:
    """Nearest grid point; equidistant values go to the smaller point"""
    ordered = np.sort(np.asarray(grid, dtype=np.float64))
    distance = np.abs(ordered - value)
    return float(ordered[int(np.flatnonzero(distance <= distance.min() + 1e-12)[0])])
