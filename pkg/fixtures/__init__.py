"""
Synthetic scenes, calibration fields and classifier segments
"""

from fixtures.scenes import (
    FIXTURE_CONFIG,
    OverlapScene,
    generate_fixtures,
    isolated_noise_field,
    ordering_fields,
    overlap_scene,
    random_noise_field,
    single_object_scene,
)
from fixtures.segments import SYNTHETIC_DIMS, synthetic_segments

__all__ = [
    "FIXTURE_CONFIG",
    "OverlapScene",
    "SYNTHETIC_DIMS",
    "generate_fixtures",
    "isolated_noise_field",
    "ordering_fields",
    "overlap_scene",
    "random_noise_field",
    "single_object_scene",
    "synthetic_segments",
]
