"""
Grid-search estimation of the smoothness weight against ground truth

Each beta is scored by how far the ICM result drifts from the truth
labels; under the neighborhood-independence simplification the per-site
negative log-likelihood of a ±1 label pair is ((f - t)/2)^2, so the mean
over the lattice is the disagreement rate.
"""

from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import List, Optional, Sequence, Tuple

import numpy as np
import structlog

from estimation.report import EstimationReport, snap_to_grid
from imaging.raster import require_same_shape
from mrf.fields import DataField, LabelField, MrfParams, initial_field, require_matching
from mrf.icm import icm_trace

logger = structlog.get_logger()

DEFAULT_GRID: Tuple[float, ...] = tuple(round(0.1 * i, 1) for i in range(41))
REFERENCE_BETA = 1.8
STATIONARITY_BUDGET = 10

TrainingPair = Tuple[DataField, LabelField]


def neg_log_likelihood(result: LabelField, truth: LabelField) -> float:
    """Mean of ((f - t)/2)^2 over sites active in both fields"""
    require_same_shape(result, truth)
    active = result.active_sites() & truth.active_sites()
    total = int(active.sum())
    if total == 0:
        return 0.0
    f = result.labels[active].astype(np.float64)
    t = truth.labels[active].astype(np.float64)
    return float((((f - t) / 2.0) ** 2).sum() / total)


def _run(data: DataField, truth: LabelField, beta: float, iterations: int) -> float:
    start = initial_field(data, truth.active)
    trace = icm_trace(start, data, MrfParams(beta, iterations), record_energy=False)
    return neg_log_likelihood(trace.field, truth)


def stationary_sweep(data: DataField, truth: LabelField, beta: float = REFERENCE_BETA,
                     budget: int = STATIONARITY_BUDGET) -> Optional[int]:
    """Index (1-based) of the first sweep that flips nothing"""
    start = initial_field(data, truth.active)
    trace = icm_trace(start, data, MrfParams(beta, budget), record_energy=False)
    return trace.sweeps if trace.converged else None


def _score_matrix(pairs: Sequence[TrainingPair], betas: Sequence[float],
                  iteration_grid: Sequence[int], threads: int) -> np.ndarray:
    for data, truth in pairs:
        require_matching(truth, data)
    cells = list(product(range(len(pairs)), range(len(betas)), range(len(iteration_grid))))

    def score(cell):
        i, b, t = cell
        data, truth = pairs[i]
        return _run(data, truth, betas[b], iteration_grid[t])

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(score, cells))
    else:
        values = [score(cell) for cell in cells]
    return np.array(values, dtype=np.float64).reshape(len(pairs), len(betas), len(iteration_grid))


def _best_betas(scores: np.ndarray, betas: Sequence[float]) -> List[float]:
    # betas ascending, so the first minimum is the smallest tying beta
    best = []
    for row in scores:
        low = row.min()
        best.append(float(betas[int(np.flatnonzero(row <= low + 1e-12)[0])]))
    return best


def _validate(pairs: Sequence[TrainingPair], grid: Sequence[float]) -> Tuple[float, ...]:
    if not pairs:
        raise ValueError("estimation needs at least one (data, truth) pair")
    if not grid:
        raise ValueError("beta grid must not be empty")
    return tuple(sorted(float(b) for b in grid))


def estimate_beta(pairs: Sequence[TrainingPair], beta_grid: Sequence[float] = DEFAULT_GRID,
                  iterations: int = 2, threads: int = 1,
                  image_ids: Optional[Sequence[str]] = None) -> EstimationReport:
    """
    Per-image best beta by minimum disagreement, averaged and snapped

    Ties prefer the smaller beta, both per image and when snapping the
    mean back onto the grid.
    """
    betas = _validate(pairs, beta_grid)
    scores = _score_matrix(pairs, betas, (iterations,), threads)
    best = _best_betas(scores[:, :, 0], betas)
    beta_star = snap_to_grid(float(np.mean(best)), betas)
    ids = tuple(image_ids) if image_ids is not None else tuple(f"image_{i}" for i in range(len(pairs)))
    logger.info("Beta estimated", images=len(pairs), best=best, beta_star=beta_star)
    return EstimationReport(ids, betas, (iterations,), scores, tuple(best), beta_star)


def sweep_report(pairs: Sequence[TrainingPair], beta_grid: Sequence[float],
                 iteration_grid: Sequence[int], threads: int = 1,
                 image_ids: Optional[Sequence[str]] = None,
                 reference_beta: float = REFERENCE_BETA) -> EstimationReport:
    """Full beta × iterations score matrix plus stationarity at the reference beta"""
    betas = _validate(pairs, beta_grid)
    if not iteration_grid:
        raise ValueError("iteration grid must not be empty")
    iters = tuple(int(t) for t in iteration_grid)
    scores = _score_matrix(pairs, betas, iters, threads)
    # best beta is taken at the largest sweep budget
    best = _best_betas(scores[:, :, int(np.argmax(iters))], betas)
    beta_star = snap_to_grid(float(np.mean(best)), betas)
    budget = max(STATIONARITY_BUDGET, max(iters))
    stationary = tuple(stationary_sweep(d, t, reference_beta, budget) for d, t in pairs)
    ids = tuple(image_ids) if image_ids is not None else tuple(f"image_{i}" for i in range(len(pairs)))
    logger.info("Sweep report built", images=len(pairs), betas=len(betas), iterations=iters)
    return EstimationReport(ids, betas, iters, scores, tuple(best), beta_star, stationary)
