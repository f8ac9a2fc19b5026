"""
Exhaustive minimizer for tiny lattices, used to check ICM
"""

from typing import Optional, Tuple

import numpy as np

from app.core.exceptions import LatticeTooLargeException
from mrf.energy import neighbor_counts, total_energy
from mrf.fields import DataField, LabelField, MrfParams

MAX_SITES = 16


def enumerate_labelings(sites: int) -> np.ndarray:
    """
    All 2**sites labelings as rows, in increasing binary code

    Site 0 (first in raster order) is the most significant bit; -1 codes 0.
    """
    codes = np.arange(2 ** sites, dtype=np.int64)
    shifts = np.arange(sites - 1, -1, -1, dtype=np.int64)
    bits = (codes[:, None] >> shifts[None, :]) & 1
    return np.where(bits == 1, 1, -1).astype(np.int8)


def brute_force_minimum(data: DataField, params: MrfParams,
                        active: Optional[np.ndarray] = None) -> Tuple[LabelField, float]:
    """Global minimizer of total_energy; ties go to the lowest labeling code"""
    h, w = data.shape
    sites = h * w
    if sites > MAX_SITES:
        raise LatticeTooLargeException(sites, MAX_SITES)
    act = np.ones((h, w), dtype=bool) if active is None else np.asarray(active, dtype=bool)

    labelings = enumerate_labelings(sites).astype(np.float64)
    d = data.values.ravel()
    act_flat = act.ravel()
    counts = neighbor_counts(act).ravel()

    energies = (((labelings - d[None, :]) / 2.0) ** 2 * act_flat[None, :]).sum(axis=1)
    for y in range(h):
        for x in range(w):
            s = y * w + x
            # each unordered active pair once, seen from both ends
            for nx, ny in ((x + 1, y), (x, y + 1)):
                if nx < w and ny < h and act[y, x] and act[ny, nx]:
                    t = ny * w + nx
                    weight = params.beta / counts[s] + params.beta / counts[t]
                    energies += (labelings[:, s] != labelings[:, t]) * weight

    best = float(energies.min())
    # first code within rounding of the minimum
    index = int(np.flatnonzero(energies <= best + 1e-9)[0])
    field = LabelField(labelings[index].reshape(h, w).astype(np.int8), active)
    return field, total_energy(field, data, params)
