"""
Image substrate: rasters, color planes, thresholds, morphology, components
"""

from imaging.color import luminance_plane, rgb_to_hsl_planes
from imaging.components import Segment, connected_components, label_regions, renumber
from imaging.morphology import morphological_open
from imaging.raster import BinaryMask, RasterImage
from imaging.threshold import Threshold, histogram_peak_threshold, hybrid_channel

__all__ = [
    "BinaryMask",
    "RasterImage",
    "Segment",
    "Threshold",
    "connected_components",
    "histogram_peak_threshold",
    "hybrid_channel",
    "label_regions",
    "luminance_plane",
    "morphological_open",
    "renumber",
    "rgb_to_hsl_planes",
]
