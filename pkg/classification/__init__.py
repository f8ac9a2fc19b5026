"""
Segment classification
"""

from classification.decision_tree import Classification, class_likelihood, classify
from classification.evaluation import EvaluationReport, evaluate
from classification.features import (
    CLASS_ORDER,
    FEATURE_NAMES,
    FeatureVector,
    SegmentClass,
    extract_features,
)
from classification.model import ClassModel, feature_deviation_ratios, train

__all__ = [
    "CLASS_ORDER",
    "Classification",
    "ClassModel",
    "EvaluationReport",
    "FEATURE_NAMES",
    "FeatureVector",
    "SegmentClass",
    "class_likelihood",
    "classify",
    "evaluate",
    "extract_features",
    "feature_deviation_ratios",
    "train",
]
