"""
Segments and 4-connected component extraction
"""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import ndimage

if TYPE_CHECKING:
    from mrf.fields import LabelField

FOUR_CONNECTED = ndimage.generate_binary_structure(2, 1)


@dataclass(frozen=True, eq=False)
class Segment:
    """
    A 4-connected region of like-labeled sites

    `pixels` is an (n, 2) integer array of (x, y) pairs in raster order.
    `tier` holds the two-tier label bits (foreground, class) when the
    segment comes from a hierarchy; `label` is the field label (±1).
    """
    id: int
    pixels: np.ndarray
    label: int = 1
    tier: Optional[Tuple[int, int]] = None
    pixel_count: int = field(init=False)
    bbox: Tuple[int, int, int, int] = field(init=False)
    centroid: Tuple[float, float] = field(init=False)

    def __post_init__(self):
        pixels = np.asarray(self.pixels, dtype=np.int64).reshape(-1, 2)
        if pixels.shape[0] == 0:
            raise ValueError("Segment must contain at least one pixel")
        order = np.lexsort((pixels[:, 0], pixels[:, 1]))
        pixels = pixels[order]
        pixels.setflags(write=False)
        xs, ys = pixels[:, 0], pixels[:, 1]
        object.__setattr__(self, "pixels", pixels)
        object.__setattr__(self, "pixel_count", int(pixels.shape[0]))
        object.__setattr__(self, "bbox", (int(xs.min()), int(ys.min()), int(xs.max()), int(ys.max())))
        object.__setattr__(self, "centroid", (float(xs.mean()), float(ys.mean())))

    @classmethod
    def from_coords(cls, segment_id: int, ys: np.ndarray, xs: np.ndarray, label: int = 1,
                    tier: Optional[Tuple[int, int]] = None) -> "Segment":
        return cls(segment_id, np.column_stack((xs, ys)), label, tier)

    @property
    def axis_lengths(self) -> Tuple[int, int]:
        x0, y0, x1, y1 = self.bbox
        return x1 - x0 + 1, y1 - y0 + 1

    @property
    def bbox_area(self) -> int:
        w, h = self.axis_lengths
        return w * h

    @property
    def first_pixel(self) -> Tuple[int, int]:
        """(y, x) of the first pixel in raster order"""
        return int(self.pixels[0, 1]), int(self.pixels[0, 0])

    @property
    def raster_key(self) -> Tuple[int, int]:
        return self.first_pixel

    def pixel_set(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset((int(x), int(y)) for x, y in self.pixels)

    def with_id(self, segment_id: int) -> "Segment":
        return Segment(segment_id, self.pixels, self.label, self.tier)

    @classmethod
    def union(cls, segment_id: int, parts: Sequence["Segment"]) -> "Segment":
        """Merge disjoint segments; label and tier come from the first part"""
        if not parts:
            raise ValueError("union of no segments")
        pixels = np.concatenate([p.pixels for p in parts], axis=0)
        return cls(segment_id, pixels, parts[0].label, parts[0].tier)

    def __repr__(self) -> str:
        return (f"Segment(id={self.id}, label={self.label}, tier={self.tier}, "
                f"pixel_count={self.pixel_count}, bbox={self.bbox})")


def label_regions(
    codes: np.ndarray, valid: Optional[np.ndarray] = None
) -> List[Tuple[int, np.ndarray, np.ndarray]]:
    """
    Maximal 4-connected regions of equal code among valid sites

    Returns (code, ys, xs) per region ordered by each region's first pixel
    in raster order; pixels inside a region are raster ordered too.
    """
    codes = np.asarray(codes)
    if valid is None:
        valid = np.ones(codes.shape, dtype=bool)
    regions = np.zeros(codes.shape, dtype=np.int64)
    region_codes: List[int] = []
    offset = 0
    for code in np.unique(codes[valid]):
        labeled, count = ndimage.label(valid & (codes == code), structure=FOUR_CONNECTED)
        if count == 0:
            continue
        regions[labeled > 0] = labeled[labeled > 0] + offset
        region_codes.extend([int(code)] * count)
        offset += count
    if offset == 0:
        return []

    flat = regions.ravel()
    sites = np.flatnonzero(flat)
    ids = flat[sites]
    order = np.argsort(ids, kind="stable")
    sorted_sites = sites[order]
    counts = np.bincount(ids, minlength=offset + 1)[1:]
    groups = np.split(sorted_sites, np.cumsum(counts)[:-1])
    # groups[i] is raster ordered, so groups[i][0] is the region's first pixel
    ordered = sorted(range(offset), key=lambda i: int(groups[i][0]))

    width = codes.shape[1]
    out = []
    for i in ordered:
        ys, xs = np.divmod(groups[i], width)
        out.append((region_codes[i], ys, xs))
    return out


def connected_components(field: "LabelField") -> List[Segment]:
    """Partition the active sites into maximal like-labeled 4-connected segments"""
    segments = []
    for sid, (code, ys, xs) in enumerate(label_regions(field.labels, field.active_sites())):
        segments.append(Segment.from_coords(sid, ys, xs, label=code))
    return segments


def renumber(segments: Iterable[Segment]) -> List[Segment]:
    """Reassign ids 0..n-1 in raster order of first pixel"""
    ordered = sorted(segments, key=lambda s: s.raster_key)
    return [s.with_id(i) for i, s in enumerate(ordered)]
