"""
Decision tree over per-branch likelihoods

The root separates the lane family from the object family by area ratio.
Lanes are then split left/right by centroid, objects into fixture/ramp by
aspect. Each branch scores its hypotheses with exp(-|m - v| / m) times
the hypothesis prior and falls to Error when the winner is below the
branch floor (error_threshold x largest prior at that branch).
"""

import math
from typing import NamedTuple, Sequence, Tuple

import structlog

from classification.features import (
    LANE_CLASSES,
    OBJECT_CLASSES,
    FeatureVector,
    FrameDims,
    SegmentClass,
    extract_features,
)
from classification.model import ClassModel
from imaging.components import Segment

logger = structlog.get_logger()

ROOT_FEATURE = "area_ratio"
LANE_FEATURE = "centroid_x_frac"
OBJECT_FEATURE = "aspect"
LANE_SPLIT = 0.5


class Classification(NamedTuple):
    label: SegmentClass
    score: float


def relative_likelihood(value: float, mean: float) -> float:
    if not mean > 0:
        raise ValueError(f"class mean must be positive, got {mean}")
    return math.exp(-abs(mean - value) / mean)


def class_likelihood(fv: FeatureVector, cls: SegmentClass, model: ClassModel, feature: str) -> float:
    """Likelihood of one feature value under one class mean"""
    model.require_trained()
    return relative_likelihood(fv.value(feature), model.mean(cls, feature))


def _pick(scores: Sequence[Tuple[SegmentClass, float]]) -> Tuple[SegmentClass, float]:
    # strict comparison keeps the earliest hypothesis on ties
    best_cls, best = scores[0]
    for cls, score in scores[1:]:
        if score > best:
            best_cls, best = cls, score
    return best_cls, best


def _root(fv: FeatureVector, model: ClassModel) -> Tuple[Tuple[SegmentClass, ...], float, float]:
    value = fv.value(ROOT_FEATURE)
    families = []
    for members in (LANE_CLASSES, OBJECT_CLASSES):
        prior = model.family_prior(members)
        like = relative_likelihood(value, model.family_mean(members, ROOT_FEATURE))
        families.append((members, like * prior, prior))
    winner = families[0]
    if families[1][1] > winner[1]:
        winner = families[1]
    floor = model.error_threshold * max(f[2] for f in families)
    return winner[0], winner[1], floor


def _branch_floor(model: ClassModel, members: Sequence[SegmentClass]) -> float:
    family = model.family_prior(members)
    return model.error_threshold * max(model.prior(c) / family for c in members)


def _branch_score(fv: FeatureVector, model: ClassModel, cls: SegmentClass,
                  members: Sequence[SegmentClass], feature: str) -> float:
    # priors conditioned on the family already chosen at the root
    return class_likelihood(fv, cls, model, feature) * model.prior(cls) / model.family_prior(members)


def classify_features(fv: FeatureVector, model: ClassModel) -> Classification:
    model.require_trained()
    if fv.pixel_count < model.min_pixels:
        return Classification(SegmentClass.ERROR, 0.0)

    family, score, floor = _root(fv, model)
    if score < floor:
        return Classification(SegmentClass.ERROR, score)

    if family == LANE_CLASSES:
        side = SegmentClass.LEFT_LANE if fv.centroid_x_frac < LANE_SPLIT else SegmentClass.RIGHT_LANE
        chosen = (side, _branch_score(fv, model, side, family, LANE_FEATURE))
    else:
        chosen = _pick([(cls, _branch_score(fv, model, cls, family, OBJECT_FEATURE)) for cls in family])

    if chosen[1] < _branch_floor(model, family):
        return Classification(SegmentClass.ERROR, chosen[1])
    return Classification(*chosen)


def classify(segment: Segment, model: ClassModel, frame_dims: FrameDims) -> Classification:
    """Class label and the winning branch score of one segment"""
    result = classify_features(extract_features(segment, frame_dims), model)
    logger.debug("Segment classified", segment=segment.id, label=result.label.value,
                 score=round(result.score, 4))
    return result
