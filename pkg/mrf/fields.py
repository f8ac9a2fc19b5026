"""
Lattice field types for structured MRF layers
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from imaging.raster import BinaryMask, RasterImage, require_same_shape


def _readonly(array: np.ndarray, dtype) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True, order="C")
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class LabelField:
    """
    Hidden binary labels in {-1, +1} with an optional active mask

    Sites outside `active` are never read or written by ICM and are not
    neighbors of anything.
    """
    labels: np.ndarray
    active: Optional[np.ndarray] = None

    def __post_init__(self):
        labels = np.asarray(self.labels)
        if labels.ndim != 2:
            raise ValueError("LabelField must be two-dimensional")
        if not np.isin(labels, (-1, 1)).all():
            raise ValueError("Labels must be -1 or +1")
        object.__setattr__(self, "labels", _readonly(labels, np.int8))
        if self.active is not None:
            active = np.asarray(self.active, dtype=bool)
            if active.shape != labels.shape:
                raise ValueError("active mask shape differs from labels")
            object.__setattr__(self, "active", _readonly(active, bool))

    @classmethod
    def uniform(cls, shape: Tuple[int, int], label: int = 1,
                active: Optional[np.ndarray] = None) -> "LabelField":
        return cls(np.full(shape, label, dtype=np.int8), active)

    @classmethod
    def from_mask(cls, mask: BinaryMask, active: Optional[np.ndarray] = None) -> "LabelField":
        return cls(np.where(mask.bits, 1, -1), active)

    @property
    def shape(self) -> Tuple[int, int]:
        return tuple(self.labels.shape)

    @property
    def height(self) -> int:
        return int(self.labels.shape[0])

    @property
    def width(self) -> int:
        return int(self.labels.shape[1])

    @property
    def site_count(self) -> int:
        return int(self.labels.size)

    def active_sites(self) -> np.ndarray:
        if self.active is None:
            return np.ones(self.shape, dtype=bool)
        return self.active

    def foreground(self) -> BinaryMask:
        """+1 sites among active sites"""
        return BinaryMask((self.labels == 1) & self.active_sites())

    def negated(self) -> "LabelField":
        return LabelField(-self.labels, self.active)

    def with_labels(self, labels: np.ndarray) -> "LabelField":
        return LabelField(labels, self.active)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabelField):
            return NotImplemented
        return (
            self.shape == other.shape
            and bool(np.array_equal(self.labels, other.labels))
            and bool(np.array_equal(self.active_sites(), other.active_sites()))
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class DataField:
    """Observed values per site in [-1, +1]"""
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise ValueError("DataField must be two-dimensional")
        if not np.isfinite(values).all() or np.abs(values).max(initial=0.0) > 1.0:
            raise ValueError("Data values must lie in [-1, +1]")
        object.__setattr__(self, "values", _readonly(values, np.float64))

    @classmethod
    def from_labels(cls, field: LabelField) -> "DataField":
        return cls(field.labels.astype(np.float64))

    @classmethod
    def from_mask(cls, mask: BinaryMask) -> "DataField":
        return cls(np.where(mask.bits, 1.0, -1.0))

    @property
    def shape(self) -> Tuple[int, int]:
        return tuple(self.values.shape)


@dataclass(frozen=True)
class MrfParams:
    """Smoothness weight and sweep budget for a 4-connected layer"""
    beta: float = 1.8
    iterations: int = 2

    def __post_init__(self):
        if not np.isfinite(self.beta) or self.beta < 0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")
        if int(self.iterations) != self.iterations or self.iterations < 1:
            raise ValueError(f"iterations must be a positive integer, got {self.iterations}")


def normalize_gray(plane: RasterImage) -> DataField:
    """Map 0..255 to 2·(v/255) − 1"""
    plane.require_channels(1)
    return DataField(2.0 * (plane.data.astype(np.float64) / 255.0) - 1.0)


def initial_field(data: DataField, active: Optional[np.ndarray] = None) -> LabelField:
    """sign(d) with d = 0 mapped to +1; inactive sites start at -1"""
    labels = np.where(data.values >= 0.0, 1, -1)
    if active is not None:
        labels = np.where(active, labels, -1)
    return LabelField(labels, active)


def require_matching(field: LabelField, data: DataField) -> None:
    require_same_shape(field, data)
