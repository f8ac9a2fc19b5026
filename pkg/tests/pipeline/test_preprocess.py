"""
Foreground preprocessing
"""

import numpy as np
import pytest

from app.core.exceptions import ChannelException
from fixtures.scenes import BARREL, GRASS, single_object_scene
from imaging.raster import RasterImage
from pipeline.preprocess import preprocess, preprocess_planes


def test_all_gray_frame_is_empty(default_settings):
    frame = RasterImage.rgb(np.full((20, 30, 3), 180, dtype=np.uint8))
    pre = preprocess_planes(frame, default_settings)
    assert pre.alpha_s.degenerate and pre.alpha_l.degenerate
    assert pre.mask.count() == 0


def test_single_object_mask(fixture_settings):
    frame = single_object_scene()
    rect = np.all(frame.data == BARREL, axis=2)
    mask = preprocess(frame, fixture_settings).bits
    assert not (mask & ~rect).any()
    # the cross-shaped opening trims the four corners
    assert mask.sum() == rect.sum() - 4


def test_dark_region_is_foreground(fixture_settings):
    pixels = np.full((24, 24, 3), 200, dtype=np.uint8)
    pixels[8:16, 8:16] = 30
    mask = preprocess(RasterImage.rgb(pixels), fixture_settings).bits
    assert mask[9:15, 9:15].all()
    assert not mask[:, :6].any()


def test_grass_is_background(fixture_settings):
    frame = RasterImage.rgb(np.tile(np.array(GRASS, dtype=np.uint8), (10, 10, 1)))
    assert preprocess(frame, fixture_settings).count() == 0


def test_requires_rgb(default_settings):
    with pytest.raises(ChannelException):
        preprocess(RasterImage.gray(np.zeros((4, 4), dtype=np.uint8)), default_settings)


def test_deterministic(scene, fixture_settings):
    assert preprocess(scene.frame, fixture_settings) == preprocess(scene.frame, fixture_settings)
