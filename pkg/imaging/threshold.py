"""
Histogram threshold selection
"""

from typing import NamedTuple

import numpy as np

from imaging.raster import BinaryMask, RasterImage, require_same_shape


class Threshold(NamedTuple):
    """Selected threshold; pixels with value ≥ `value` fall in the upper class"""
    value: int
    degenerate: bool = False


def histogram_peak_threshold(plane: RasterImage) -> Threshold:
    """
    Otsu threshold evaluated exhaustively over all 256 candidates

    Candidate t splits the histogram into [0, t) and [t, 255]. When several
    candidates share the maximal between-class variance (an empty gap
    between modes), the middle of that run is returned. A plane with a
    single distinct value returns that value flagged degenerate.
    """
    plane.require_channels(1)
    hist = np.bincount(plane.data.ravel(), minlength=256).astype(np.float64)
    total = hist.sum()
    if total == 0:
        return Threshold(0, True)

    present = np.flatnonzero(hist)
    if present.size == 1:
        return Threshold(int(present[0]), True)

    prob = hist / total
    levels = np.arange(256, dtype=np.float64)
    # w0[t], mu0[t] describe the class below candidate t
    w0 = np.concatenate(([0.0], np.cumsum(prob)[:-1]))
    cum_mean = np.concatenate(([0.0], np.cumsum(prob * levels)[:-1]))
    mu_total = float((prob * levels).sum())
    w1 = 1.0 - w0

    with np.errstate(divide="ignore", invalid="ignore"):
        between = (mu_total * w0 - cum_mean) ** 2 / (w0 * w1)
    between[~np.isfinite(between)] = -1.0
    between[(w0 <= 0) | (w1 <= 0)] = -1.0

    best = between.max()
    ties = np.flatnonzero(np.isclose(between, best, rtol=1e-12, atol=0.0))
    # ties form one contiguous run between two modes; take its middle
    value = int(ties[(ties.size - 1) // 2]) if ties.size > 1 else int(ties[0])
    return Threshold(value, False)


def resolve_threshold(setting, plane: RasterImage) -> Threshold:
    """Config value ("auto" or 0..255) to a concrete threshold"""
    if setting == "auto":
        return histogram_peak_threshold(plane)
    return Threshold(int(setting), False)


def hybrid_channel(sat: RasterImage, lum: RasterImage, alpha_s: int, alpha_l: int) -> BinaryMask:
    """
    Foreground from saturation or darkness

    The dark indicator (lum < alpha_l) is scaled to {0, 255} before the max
    so both operands share the intensity scale.
    """
    sat.require_channels(1)
    lum.require_channels(1)
    require_same_shape(sat, lum)
    dark = np.where(lum.data < alpha_l, 255, 0).astype(np.uint8)
    hybrid = np.maximum(sat.data, dark).astype(np.int16)
    return BinaryMask(hybrid >= alpha_s)
