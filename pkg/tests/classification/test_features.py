"""
Segment features
"""

import math

import numpy as np
import pytest

from classification.features import FEATURE_NAMES, extract_features
from imaging.components import Segment

DIMS = (320, 240)


def _from_mask(mask, x0=0, y0=0):
    ys, xs = np.nonzero(mask)
    return Segment.from_coords(0, ys + y0, xs + x0)


def test_solid_square():
    fv = extract_features(_from_mask(np.ones((10, 10), dtype=bool), 5, 5), DIMS)
    assert fv.area_ratio == 1.0
    assert fv.aspect == 1.0
    assert fv.pixel_count == 100
    assert fv.centroid_x_frac == pytest.approx(9.5 / 320)


def test_diagonal_line():
    fv = extract_features(_from_mask(np.eye(50, dtype=bool)), DIMS)
    assert fv.area_ratio == pytest.approx(0.02)
    assert (fv.length_x, fv.length_y) == (50, 50)


def test_barrel_like_blob():
    mask = np.ones((60, 40), dtype=bool)
    mask[1:59:5, 1:39:2] = False  # 12 x 19 interior holes
    fv = extract_features(_from_mask(mask, 100, 50), DIMS)
    assert fv.area_ratio == pytest.approx(1 - 228 / 2400)
    assert fv.aspect == pytest.approx(40 / 60)
    assert fv.diag_norm == pytest.approx(math.hypot(40, 60) / math.hypot(320, 240))


def test_value_lookup():
    fv = extract_features(_from_mask(np.ones((2, 4), dtype=bool)), DIMS)
    assert fv.value("aspect") == 2.0
    assert set(fv.as_dict()) == set(FEATURE_NAMES)
    with pytest.raises(KeyError):
        fv.value("hue")


def test_invalid_frame():
    with pytest.raises(ValueError):
        extract_features(_from_mask(np.ones((1, 1), dtype=bool)), (0, 10))
