"""
Size and shape features of a segment
"""

import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Dict, Tuple

from imaging.components import Segment

FrameDims = Tuple[int, int]  # (width, height)


class SegmentClass(str, Enum):
    LEFT_LANE = "LeftLane"
    RIGHT_LANE = "RightLane"
    TRAFFIC_FIXTURE = "TrafficFixture"
    RAMP = "Ramp"
    ERROR = "Error"


# tie-break order for the argmax
CLASS_ORDER: Tuple[SegmentClass, ...] = (
    SegmentClass.LEFT_LANE,
    SegmentClass.RIGHT_LANE,
    SegmentClass.TRAFFIC_FIXTURE,
    SegmentClass.RAMP,
)
LANE_CLASSES = (SegmentClass.LEFT_LANE, SegmentClass.RIGHT_LANE)
OBJECT_CLASSES = (SegmentClass.TRAFFIC_FIXTURE, SegmentClass.RAMP)

FEATURE_NAMES: Tuple[str, ...] = (
    "pixel_count",
    "area_ratio",
    "length_x",
    "length_y",
    "aspect",
    "centroid_x_frac",
    "diag_norm",
)


@dataclass(frozen=True)
class FeatureVector:
    pixel_count: int
    area_ratio: float
    length_x: int
    length_y: int
    aspect: float
    centroid_x_frac: float
    diag_norm: float

    def value(self, feature: str) -> float:
        if feature not in FEATURE_NAMES:
            raise KeyError(f"Unknown feature: {feature}")
        return float(getattr(self, feature))

    def as_dict(self) -> Dict[str, float]:
        return asdict(self)


def extract_features(segment: Segment, frame_dims: FrameDims) -> FeatureVector:
    """Geometry of `segment` relative to a frame of (width, height)"""
    width, height = frame_dims
    if width < 1 or height < 1:
        raise ValueError(f"frame dimensions must be positive, got {frame_dims}")
    length_x, length_y = segment.axis_lengths
    return FeatureVector(
        pixel_count=segment.pixel_count,
        area_ratio=segment.pixel_count / segment.bbox_area,
        length_x=length_x,
        length_y=length_y,
        aspect=length_x / length_y,
        centroid_x_frac=segment.centroid[0] / width,
        diag_norm=math.hypot(length_x, length_y) / math.hypot(width, height),
    )
