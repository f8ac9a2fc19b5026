"""
Foreground preprocessing: HSL planes, hybrid channel, opening
"""

from dataclasses import dataclass

import structlog

from app.config import PipelineSettings
from imaging.color import rgb_to_hsl_planes
from imaging.morphology import morphological_open
from imaging.raster import BinaryMask, RasterImage
from imaging.threshold import Threshold, hybrid_channel, resolve_threshold

logger = structlog.get_logger()


@dataclass(frozen=True)
class Preprocessed:
    """Mask plus the planes and thresholds that produced it"""
    mask: BinaryMask
    saturation: RasterImage
    luminance: RasterImage
    alpha_s: Threshold
    alpha_l: Threshold


def preprocess_planes(frame: RasterImage, cfg: PipelineSettings) -> Preprocessed:
    frame.require_channels(3)
    sat, lum = rgb_to_hsl_planes(frame)
    alpha_s = resolve_threshold(cfg.alpha_s, sat)
    alpha_l = resolve_threshold(cfg.alpha_l, lum)
    # a flat plane has no upper mode: nothing passes the saturation cut and
    # nothing counts as darker than the luminance level
    s_cut = alpha_s.value + 1 if alpha_s.degenerate else alpha_s.value
    if alpha_s.degenerate or alpha_l.degenerate:
        logger.debug("Degenerate histogram threshold", alpha_s=alpha_s.value, alpha_l=alpha_l.value)
    mask = hybrid_channel(sat, lum, s_cut, alpha_l.value)
    opened = morphological_open(mask, cfg.open_radius)
    return Preprocessed(opened, sat, lum, alpha_s, alpha_l)


def preprocess(frame: RasterImage, cfg: PipelineSettings) -> BinaryMask:
    """Binary foreground of an RGB frame"""
    return preprocess_planes(frame, cfg).mask
