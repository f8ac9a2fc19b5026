"""
Raster image and binary mask types
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from app.core.exceptions import ChannelException, DimensionMismatchException


def _frozen(array: np.ndarray, dtype) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True, order="C")
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class RasterImage:
    """
    Image with 1 (gray) or 3 (RGB) channels of 8-bit intensities

    `data` has shape (height, width) for gray and (height, width, 3) for RGB.
    """
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data)
        if data.ndim == 3 and data.shape[2] == 1:
            data = data[:, :, 0]
        if data.ndim not in (2, 3) or (data.ndim == 3 and data.shape[2] != 3):
            raise ChannelException(3 if data.ndim == 3 else 1, data.shape[-1] if data.ndim == 3 else 0)
        if data.size and (data.min() < 0 or data.max() > 255):
            raise ValueError("Intensities must lie in [0, 255]")
        object.__setattr__(self, "data", _frozen(data, np.uint8))

    @classmethod
    def gray(cls, plane: np.ndarray) -> "RasterImage":
        return cls(np.asarray(plane))

    @classmethod
    def rgb(cls, pixels: np.ndarray) -> "RasterImage":
        pixels = np.asarray(pixels)
        if pixels.ndim != 3 or pixels.shape[2] != 3:
            raise ChannelException(3, pixels.shape[2] if pixels.ndim == 3 else 1)
        return cls(pixels)

    @property
    def height(self) -> int:
        return int(self.data.shape[0])

    @property
    def width(self) -> int:
        return int(self.data.shape[1])

    @property
    def channels(self) -> int:
        return 1 if self.data.ndim == 2 else 3

    @property
    def shape(self) -> Tuple[int, int]:
        return self.height, self.width

    def require_channels(self, channels: int) -> None:
        if self.channels != channels:
            raise ChannelException(channels, self.channels)


@dataclass(frozen=True, eq=False)
class BinaryMask:
    """Per-pixel foreground bits"""
    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits)
        if bits.ndim != 2:
            raise ValueError("Mask must be two-dimensional")
        object.__setattr__(self, "bits", _frozen(bits, bool))

    @classmethod
    def empty(cls, shape: Tuple[int, int]) -> "BinaryMask":
        return cls(np.zeros(shape, dtype=bool))

    @property
    def height(self) -> int:
        return int(self.bits.shape[0])

    @property
    def width(self) -> int:
        return int(self.bits.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.height, self.width

    def count(self) -> int:
        return int(self.bits.sum())

    def to_image(self) -> RasterImage:
        """{0, 255} gray image for PGM output"""
        return RasterImage.gray(np.where(self.bits, 255, 0).astype(np.uint8))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMask):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.bits, other.bits))

    __hash__ = None


def require_same_shape(left, right) -> None:
    """Raise when two lattice-shaped objects disagree in (height, width)"""
    if tuple(left.shape) != tuple(right.shape):
        raise DimensionMismatchException(tuple(left.shape), tuple(right.shape))
