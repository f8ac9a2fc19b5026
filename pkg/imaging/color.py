"""
HSL plane extraction

Bi-hexcone HSL with lightness = (max + min) / 2, both planes scaled to 0–255.
"""

from typing import Tuple

import numpy as np

from imaging.raster import RasterImage


def rgb_to_hsl_planes(img: RasterImage) -> Tuple[RasterImage, RasterImage]:
    """
    Saturation and luminance planes of an RGB image

    Luminance is floor((max + min) / 2), so pure red maps to 127.
    Saturation is delta / sum below mid lightness and
    delta / (510 - sum) above it, rounded half up to 0–255.
    """
    img.require_channels(3)
    rgb = img.data.astype(np.int32)
    mx = rgb.max(axis=2)
    mn = rgb.min(axis=2)
    delta = mx - mn
    total = mx + mn

    lum = total // 2

    denom = np.where(total <= 255, total, 510 - total)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(delta > 0, delta / np.maximum(denom, 1), 0.0)
    sat = np.floor(ratio * 255.0 + 0.5).clip(0, 255)

    return RasterImage.gray(sat.astype(np.uint8)), RasterImage.gray(lum.astype(np.uint8))


def luminance_plane(img: RasterImage) -> RasterImage:
    """Luminance of RGB input; gray input is already a luminance plane"""
    if img.channels == 1:
        return img
    return rgb_to_hsl_planes(img)[1]
