"""
Binary morphology
"""

from functools import lru_cache

import numpy as np
from scipy import ndimage

from imaging.raster import BinaryMask


@lru_cache(maxsize=8)
def cross_element(radius: int) -> np.ndarray:
    """Diamond of the given radius, built by iterating the 3x3 cross"""
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    cross = ndimage.generate_binary_structure(2, 1)
    element = ndimage.iterate_structure(cross, radius)
    element.setflags(write=False)
    return element


def morphological_open(mask: BinaryMask, radius: int = 1) -> BinaryMask:
    """Erosion then dilation with the same cross-shaped element"""
    element = cross_element(radius)
    if not mask.bits.any():
        return BinaryMask.empty(mask.shape)
    opened = ndimage.binary_opening(mask.bits, structure=element)
    return BinaryMask(opened)
