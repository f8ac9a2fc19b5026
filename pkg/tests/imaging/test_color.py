"""
HSL plane extraction
"""

import colorsys

import numpy as np
import pytest

from app.core.exceptions import ChannelException
from imaging.color import luminance_plane, rgb_to_hsl_planes
from imaging.raster import RasterImage


def _pixel(rgb):
    sat, lum = rgb_to_hsl_planes(RasterImage.rgb(np.array([[rgb]], dtype=np.uint8)))
    return int(sat.data[0, 0]), int(lum.data[0, 0])


def test_pure_red():
    assert _pixel((255, 0, 0)) == (255, 127)


def test_gray_has_zero_saturation():
    assert _pixel((128, 128, 128)) == (0, 128)


@pytest.mark.parametrize("rgb", [(200, 100, 50), (10, 20, 30), (250, 240, 150), (220, 100, 10), (1, 0, 0)])
def test_matches_colorsys(rgb):
    _, l, s = colorsys.rgb_to_hls(*(c / 255.0 for c in rgb))
    sat, lum = _pixel(rgb)
    assert abs(sat - s * 255.0) <= 1.0
    assert abs(lum - l * 255.0) <= 1.0


def test_random_image_against_colorsys(rng):
    pixels = rng.integers(0, 256, size=(12, 9, 3), dtype=np.uint8)
    sat, lum = rgb_to_hsl_planes(RasterImage.rgb(pixels))
    assert sat.shape == lum.shape == (12, 9)
    for y in range(12):
        for x in range(9):
            _, l, s = colorsys.rgb_to_hls(*(pixels[y, x] / 255.0))
            assert abs(int(sat.data[y, x]) - s * 255.0) <= 1.0
            assert abs(int(lum.data[y, x]) - l * 255.0) <= 1.0


def test_achromatic_image_has_zero_saturation(rng):
    v = rng.integers(0, 256, size=(8, 8), dtype=np.uint8)
    sat, _ = rgb_to_hsl_planes(RasterImage.rgb(np.stack([v, v, v], axis=2)))
    assert not sat.data.any()


def test_gray_input_rejected():
    with pytest.raises(ChannelException):
        rgb_to_hsl_planes(RasterImage.gray(np.zeros((4, 4), dtype=np.uint8)))


def test_luminance_plane_passes_gray_through():
    plane = RasterImage.gray(np.full((3, 3), 77, dtype=np.uint8))
    assert luminance_plane(plane) is plane
