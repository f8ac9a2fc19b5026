"""
PGM/PPM reading and writing, PNG through Pillow
"""

from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from app.core.exceptions import ImageFormatException, ImageIOException
from imaging.raster import BinaryMask, RasterImage

PathLike = Union[str, Path]

_MAGIC_CHANNELS = {b"P2": 1, b"P3": 3, b"P5": 1, b"P6": 3}
_NETPBM_SUFFIXES = {".pgm", ".ppm", ".pnm"}
IMAGE_SUFFIXES = _NETPBM_SUFFIXES | {".png"}


def _header_tokens(buf: bytes, path: str) -> Tuple[List[bytes], int]:
    """Return the 4 header tokens and the offset of the raster data"""
    tokens: List[bytes] = []
    pos = 0
    n = len(buf)
    while len(tokens) < 4:
        while pos < n and buf[pos:pos + 1].isspace():
            pos += 1
        if pos < n and buf[pos:pos + 1] == b"#":
            while pos < n and buf[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not buf[pos:pos + 1].isspace() and buf[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise ImageFormatException(path, "truncated header")
        tokens.append(buf[start:pos])
    # single whitespace byte separates header from raster
    return tokens, pos + 1


def read_netpbm(path: PathLike) -> RasterImage:
    """Read a P2/P3/P5/P6 image with maxval ≤ 255"""
    path = str(path)
    try:
        buf = Path(path).read_bytes()
    except OSError as exc:
        raise ImageIOException(path, exc.strerror or str(exc)) from exc

    tokens, offset = _header_tokens(buf, path)
    magic = tokens[0]
    if magic not in _MAGIC_CHANNELS:
        raise ImageFormatException(path, f"unsupported magic {magic!r}")
    try:
        width, height, maxval = (int(t) for t in tokens[1:4])
    except ValueError as exc:
        raise ImageFormatException(path, "non-numeric header field") from exc
    if width <= 0 or height <= 0 or not 0 < maxval <= 255:
        raise ImageFormatException(path, f"bad header {width}x{height} maxval {maxval}")

    channels = _MAGIC_CHANNELS[magic]
    count = width * height * channels
    if magic in (b"P5", b"P6"):
        if len(buf) - offset < count:
            raise ImageFormatException(path, "truncated raster")
        raster = np.frombuffer(buf, dtype=np.uint8, count=count, offset=offset)
    else:
        values = buf[offset - 1:].split()
        if len(values) < count:
            raise ImageFormatException(path, "truncated raster")
        raster = np.array([int(v) for v in values[:count]], dtype=np.int64)

    if raster.max(initial=0) > maxval:
        raise ImageFormatException(path, "sample exceeds maxval")
    if maxval != 255:
        raster = np.rint(raster.astype(np.float64) * 255.0 / maxval)
    shape = (height, width) if channels == 1 else (height, width, 3)
    return RasterImage(raster.reshape(shape).astype(np.uint8))


def read_png(path: PathLike) -> RasterImage:
    """Read a PNG; palettes and alpha are flattened to RGB or gray"""
    from PIL import Image, UnidentifiedImageError

    try:
        with Image.open(path) as im:
            mode = "L" if im.mode in ("1", "L", "I;16", "I") else "RGB"
            pixels = np.asarray(im.convert(mode))
    except (OSError, UnidentifiedImageError) as exc:
        raise ImageIOException(str(path), str(exc)) from exc
    return RasterImage(pixels)


def read_image(path: PathLike) -> RasterImage:
    """Dispatch on suffix; unknown suffixes are sniffed as netpbm"""
    if Path(path).suffix.lower() == ".png":
        return read_png(path)
    return read_netpbm(path)


def write_netpbm(image: RasterImage, path: PathLike) -> Path:
    """Write P5 (gray) or P6 (RGB) with maxval 255"""
    path = Path(path)
    magic = b"P5" if image.channels == 1 else b"P6"
    header = magic + f"\n{image.width} {image.height}\n255\n".encode("ascii")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(header + image.data.tobytes())
    except OSError as exc:
        raise ImageIOException(str(path), exc.strerror or str(exc)) from exc
    return path


def write_pgm(image: Union[RasterImage, BinaryMask], path: PathLike) -> Path:
    if isinstance(image, BinaryMask):
        image = image.to_image()
    image.require_channels(1)
    return write_netpbm(image, path)


def write_ppm(image: RasterImage, path: PathLike) -> Path:
    image.require_channels(3)
    return write_netpbm(image, path)


def read_mask(path: PathLike) -> BinaryMask:
    """Gray image as a mask; samples ≥ 128 are foreground"""
    image = read_image(path)
    plane = image.data if image.channels == 1 else image.data.max(axis=2)
    return BinaryMask(plane >= 128)
