"""
Opening with the cross element
"""

import numpy as np

from imaging.morphology import cross_element, morphological_open
from imaging.raster import BinaryMask

CROSS = ((0, 0), (0, -1), (-1, 0), (0, 1), (1, 0))


def _erode(sites, shape):
    h, w = shape
    return {
        (y, x) for y in range(h) for x in range(w)
        if all((y + dy, x + dx) in sites for dy, dx in CROSS)
    }


def _dilate(sites, shape):
    h, w = shape
    return {
        (y + dy, x + dx) for y, x in sites for dy, dx in CROSS
        if 0 <= y + dy < h and 0 <= x + dx < w
    }


def _open_oracle(bits):
    sites = {(int(y), int(x)) for y, x in zip(*np.nonzero(bits))}
    opened = _dilate(_erode(sites, bits.shape), bits.shape)
    out = np.zeros(bits.shape, dtype=bool)
    for y, x in opened:
        out[y, x] = True
    return out


def test_isolated_pixel_removed():
    bits = np.zeros((7, 7), dtype=bool)
    bits[3, 3] = True
    assert morphological_open(BinaryMask(bits)).count() == 0


def test_solid_block_keeps_all_but_corners():
    bits = np.zeros((16, 16), dtype=bool)
    bits[3:13, 3:13] = True
    expected = bits.copy()
    for y, x in ((3, 3), (3, 12), (12, 3), (12, 12)):
        expected[y, x] = False
    opened = morphological_open(BinaryMask(bits))
    assert np.array_equal(opened.bits, expected)
    assert morphological_open(opened) == opened


def test_spur_removed():
    bits = np.zeros((14, 14), dtype=bool)
    bits[2:12, 2:6] = True
    bits[8:12, 2:12] = True
    bits[5, 6:10] = True  # one pixel thick spur
    opened = morphological_open(BinaryMask(bits)).bits
    assert not opened[5, 7:10].any()
    assert np.array_equal(opened, _open_oracle(bits))
    assert opened[3:11, 3:5].all() and opened[9:11, 3:11].all()


def test_matches_set_oracle(rng):
    for _ in range(20):
        bits = rng.random((12, 15)) < 0.6
        assert np.array_equal(morphological_open(BinaryMask(bits)).bits, _open_oracle(bits))


def test_idempotent(rng):
    mask = BinaryMask(rng.random((20, 20)) < 0.55)
    once = morphological_open(mask, 1)
    assert morphological_open(once, 1) == once


def test_empty_mask():
    assert morphological_open(BinaryMask.empty((5, 5))).count() == 0


def test_radius_two_is_a_diamond():
    element = cross_element(2)
    assert element.shape == (5, 5)
    assert int(element.sum()) == 13
