"""
Seeded synthetic segments for training and evaluating the classifier

All shapes live in a 320x240 frame. Lanes are steep three-pixel-wide
diagonals, fixtures are tall nearly solid rectangles, ramps are wide
trapezoids and noise is either a small speck or a thin horizontal streak.
"""

from typing import List, Optional, Tuple

import numpy as np

from classification.features import SegmentClass
from classification.model import LabeledSegment
from imaging.components import Segment

SYNTHETIC_DIMS: Tuple[int, int] = (320, 240)
PER_CLASS = 40


def _segment(mask: np.ndarray, x0: int, y0: int, segment_id: int) -> Segment:
    ys, xs = np.nonzero(mask)
    return Segment.from_coords(segment_id, ys + y0, xs + x0)


def make_lane(rng: np.random.Generator, left: bool, segment_id: int = 0) -> Segment:
    width, height = SYNTHETIC_DIMS
    run = int(rng.integers(37, 91))
    rows = int(rng.integers(max(run, 60), 201))
    lo, hi = (0.15, 0.40) if left else (0.60, 0.85)
    cx = rng.uniform(lo, hi) * width
    x0 = int(np.clip(round(cx - (run + 3) / 2), 0, width - run - 3))
    y0 = int(rng.integers(0, height - rows + 1))

    mask = np.zeros((rows, run + 3), dtype=bool)
    centers = np.rint(np.linspace(0, run, rows)).astype(int) + 1
    if rng.random() < 0.5:
        centers = centers[::-1]
    for y, c in enumerate(centers):
        mask[y, c - 1:c + 2] = True
    return _segment(mask, x0, y0, segment_id)


def make_fixture(rng: np.random.Generator, segment_id: int = 0) -> Segment:
    width, height = SYNTHETIC_DIMS
    rows = int(rng.integers(30, 61))
    cols = max(3, int(round(rows * rng.uniform(0.5, 0.8))))
    fill = rng.uniform(0.85, 0.95)
    mask = np.ones((rows, cols), dtype=bool)
    # holes stay off the border so the bounding box is unchanged
    interior = np.argwhere(np.ones((rows - 2, cols - 2), dtype=bool)) + 1
    holes = min(len(interior), int(round((1.0 - fill) * rows * cols)))
    for y, x in interior[rng.choice(len(interior), size=holes, replace=False)]:
        mask[y, x] = False
    x0 = int(rng.integers(0, width - cols + 1))
    y0 = int(rng.integers(0, height - rows + 1))
    return _segment(mask, x0, y0, segment_id)


def make_ramp(rng: np.random.Generator, segment_id: int = 0) -> Segment:
    width, height = SYNTHETIC_DIMS
    cols = int(rng.integers(60, 121))
    rows = max(2, int(round(cols / rng.uniform(2.2, 3.4))))
    top = rng.uniform(0.2, 0.6)
    mask = np.zeros((rows, cols), dtype=bool)
    for y in range(rows):
        span = cols * (top + (1.0 - top) * y / (rows - 1))
        start = int(round((cols - span) / 2))
        mask[y, start:cols - start] = True
    x0 = int(rng.integers(0, width - cols + 1))
    y0 = int(rng.integers(0, height - rows + 1))
    return _segment(mask, x0, y0, segment_id)


def make_noise(rng: np.random.Generator, segment_id: int = 0) -> Segment:
    width, height = SYNTHETIC_DIMS
    if rng.random() < 0.5:
        rows = int(rng.integers(1, 6))
        cols = int(rng.integers(max(1, int(np.ceil(3 / rows))), 30 // rows + 1))
        mask = np.ones((rows, cols), dtype=bool)
    else:
        rows = int(rng.integers(1, 4))
        cols = int(round(rows * rng.uniform(7.0, 15.0)))
        mask = np.ones((rows, cols), dtype=bool)
    x0 = int(rng.integers(0, width - cols + 1))
    y0 = int(rng.integers(0, height - rows + 1))
    return _segment(mask, x0, y0, segment_id)


def synthetic_segments(seed: int = 0, per_class: int = PER_CLASS,
                       include_noise: bool = True,
                       rng: Optional[np.random.Generator] = None) -> List[LabeledSegment]:
    """Labeled segments, `per_class` of each class, in a fixed interleaved order"""
    rng = rng if rng is not None else np.random.default_rng(seed)
    makers = [
        (SegmentClass.LEFT_LANE, lambda i: make_lane(rng, True, i)),
        (SegmentClass.RIGHT_LANE, lambda i: make_lane(rng, False, i)),
        (SegmentClass.TRAFFIC_FIXTURE, lambda i: make_fixture(rng, i)),
        (SegmentClass.RAMP, lambda i: make_ramp(rng, i)),
    ]
    if include_noise:
        makers.append((SegmentClass.ERROR, lambda i: make_noise(rng, i)))
    out: List[LabeledSegment] = []
    for _ in range(per_class):
        for cls, make in makers:
            out.append((make(len(out)), cls))
    return out
