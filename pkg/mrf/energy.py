"""
Potts energies for a 4-connected binary layer

A site's energy is ((λ − d)/2)² + (β/|N|)·Σ ((λ − f')/2)² over its
in-bounds active neighbors, and `total_energy` sums it over active sites.
Because |N| varies at the border that sum is not what ICM descends.
`icm_potential` is

    Σ_s max(|N_s|, 1)·((f_s − d_s)/2)² + (β/2)·Σ_s Σ_{t∈N_s} ((f_s − f_t)/2)²

whose change under a single-site flip equals |N_s| times the change of
that site's energy. Every ICM update lowers it or leaves it.
"""

from typing import List, Tuple

import numpy as np

from mrf.fields import DataField, LabelField, MrfParams, require_matching

OFFSETS = ((0, -1), (-1, 0), (0, 1), (1, 0))


def neighbors(site: Tuple[int, int], active: np.ndarray) -> List[Tuple[int, int]]:
    """In-bounds active 4-neighbors of an (x, y) site"""
    x, y = site
    h, w = active.shape
    out = []
    for dy, dx in OFFSETS:
        nx, ny = x + dx, y + dy
        if 0 <= nx < w and 0 <= ny < h and active[ny, nx]:
            out.append((nx, ny))
    return out


def site_energy(site: Tuple[int, int], candidate: int, data: DataField,
                field: LabelField, params: MrfParams) -> float:
    """Energy of placing `candidate` at an (x, y) site with all else fixed"""
    if candidate not in (-1, 1):
        raise ValueError(f"candidate must be -1 or +1, got {candidate}")
    require_matching(field, data)
    x, y = site
    active = field.active_sites()
    if not active[y, x]:
        raise ValueError(f"site {site} is not active")

    d = float(data.values[y, x])
    likelihood = ((candidate - d) / 2.0) ** 2
    nbrs = neighbors(site, active)
    if not nbrs:
        return likelihood
    smooth = sum(((candidate - int(field.labels[ny, nx])) / 2.0) ** 2 for nx, ny in nbrs)
    return likelihood + (params.beta / len(nbrs)) * smooth


def neighbor_counts(active: np.ndarray) -> np.ndarray:
    """|N| per site: number of in-bounds active 4-neighbors"""
    padded = np.pad(active, 1, constant_values=False).astype(np.int8)
    return (
        padded[:-2, 1:-1] + padded[2:, 1:-1] + padded[1:-1, :-2] + padded[1:-1, 2:]
    ).astype(np.int64)


def disagreements(labels: np.ndarray, active: np.ndarray) -> np.ndarray:
    """Per site, how many active neighbors carry the other label"""
    lab = np.pad(labels.astype(np.int8), 1, constant_values=0)
    act = np.pad(active, 1, constant_values=False)
    centre = lab[1:-1, 1:-1]
    total = np.zeros(labels.shape, dtype=np.int64)
    for sl in ((slice(None, -2), slice(1, -1)), (slice(2, None), slice(1, -1)),
               (slice(1, -1), slice(None, -2)), (slice(1, -1), slice(2, None))):
        total += (act[sl] & (lab[sl] != centre)).astype(np.int64)
    return total


def total_energy(field: LabelField, data: DataField, params: MrfParams) -> float:
    """Sum of site energies over active sites"""
    require_matching(field, data)
    active = field.active_sites()
    likelihood = ((field.labels.astype(np.float64) - data.values) / 2.0) ** 2
    counts = neighbor_counts(active)
    dis = disagreements(field.labels, active)
    prior = np.divide(params.beta * dis, counts, out=np.zeros(likelihood.shape), where=counts > 0)
    return float((likelihood + prior)[active].sum())


def icm_potential(field: LabelField, data: DataField, params: MrfParams) -> float:
    """Potential descended by ICM (see module docstring)"""
    require_matching(field, data)
    active = field.active_sites()
    labels = field.labels.astype(np.float64)
    likelihood = ((labels - data.values) / 2.0) ** 2
    weight = np.maximum(neighbor_counts(active), 1)
    dis = disagreements(field.labels, active)
    per_site = weight * likelihood + (params.beta / 2.0) * dis
    return float(per_site[active].sum())


def single_site_improvements(field: LabelField, data: DataField, params: MrfParams,
                             tol: float = 1e-12) -> List[Tuple[int, int]]:
    """Active (x, y) sites whose flip strictly lowers the ICM potential"""
    base = icm_potential(field, data, params)
    labels = field.labels.copy()
    found = []
    for y, x in zip(*np.nonzero(field.active_sites())):
        labels[y, x] = -labels[y, x]
        if icm_potential(field.with_labels(labels), data, params) < base - tol:
            found.append((int(x), int(y)))
        labels[y, x] = -labels[y, x]
    return found
