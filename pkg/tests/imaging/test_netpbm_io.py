"""
Netpbm and PNG I/O
"""

import numpy as np
import pytest
from PIL import Image

from app.core.exceptions import ChannelException, ImageFormatException, ImageIOException
from imaging.io import read_image, read_mask, read_netpbm, read_png, write_pgm, write_ppm
from imaging.raster import BinaryMask, RasterImage


def test_ppm_bit_exact(tmp_path, rng):
    pixels = rng.integers(0, 256, size=(7, 5, 3), dtype=np.uint8)
    path = write_ppm(RasterImage.rgb(pixels), tmp_path / "a.ppm")
    assert path.read_bytes().startswith(b"P6\n5 7\n255\n")
    assert np.array_equal(read_netpbm(path).data, pixels)


def test_mask_as_pgm(tmp_path):
    bits = np.array([[True, False], [False, True]])
    path = write_pgm(BinaryMask(bits), tmp_path / "nested" / "m.pgm")
    raw = path.read_bytes()
    assert raw.endswith(bytes([255, 0, 0, 255]))
    assert read_mask(path) == BinaryMask(bits)


def test_header_comments_and_ascii(tmp_path):
    path = tmp_path / "c.pgm"
    path.write_bytes(b"P2\n# comment\n3 1\n# another\n15\n0 15 5\n")
    assert read_netpbm(path).data.tolist() == [[0, 255, 85]]


MALFORMED = [b"P7\n1 1\n255\n\x00", b"P5\n4 4\n255\n\x00", b"P5\n2 2\n", b"P5\nx 2\n255\n"]


@pytest.mark.parametrize("payload", MALFORMED)
def test_malformed_rejected(tmp_path, payload):
    path = tmp_path / "bad.pgm"
    path.write_bytes(payload)
    with pytest.raises(ImageFormatException):
        read_netpbm(path)


def test_missing_file(tmp_path):
    with pytest.raises(ImageIOException) as exc:
        read_image(tmp_path / "nope.ppm")
    assert exc.value.exit_code == 2


def test_png_through_pillow(tmp_path, rng):
    pixels = rng.integers(0, 256, size=(6, 4, 3), dtype=np.uint8)
    Image.fromarray(pixels).save(tmp_path / "f.png")
    assert np.array_equal(read_png(tmp_path / "f.png").data, pixels)
    assert read_image(tmp_path / "f.png").channels == 3


def test_write_pgm_requires_gray(tmp_path):
    with pytest.raises(ChannelException):
        write_pgm(RasterImage.rgb(np.zeros((2, 2, 3), dtype=np.uint8)), tmp_path / "x.pgm")
