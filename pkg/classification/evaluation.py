"""
Classifier evaluation metrics
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List

import pandas as pd
from sklearn.metrics import accuracy_score, recall_score

from classification.decision_tree import classify
from classification.features import CLASS_ORDER, FrameDims, SegmentClass
from classification.model import ClassModel, LabeledSegment

ALL_CLASSES = [c.value for c in CLASS_ORDER] + [SegmentClass.ERROR.value]


@dataclass(frozen=True)
class EvaluationReport:
    """
    `accuracy` covers the examples whose true class is one of the four
    object classes; `overall_accuracy` includes Error examples too.
    """
    accuracy: float
    overall_accuracy: float
    recall: Dict[str, float]
    confusion: pd.DataFrame

    @property
    def error_recall(self) -> float:
        return self.recall[SegmentClass.ERROR.value]


def evaluate(model: ClassModel, labeled: Iterable[LabeledSegment], frame_dims: FrameDims) -> EvaluationReport:
    truth: List[str] = []
    predicted: List[str] = []
    for segment, cls in labeled:
        truth.append(SegmentClass(cls).value)
        predicted.append(classify(segment, model, frame_dims).label.value)
    if not truth:
        raise ValueError("evaluation needs at least one labeled segment")

    object_rows = [i for i, t in enumerate(truth) if t != SegmentClass.ERROR.value]
    accuracy = (
        accuracy_score([truth[i] for i in object_rows], [predicted[i] for i in object_rows])
        if object_rows else 0.0
    )
    recalls = recall_score(truth, predicted, labels=ALL_CLASSES, average=None, zero_division=0)
    confusion = pd.crosstab(
        pd.Categorical(truth, categories=ALL_CLASSES),
        pd.Categorical(predicted, categories=ALL_CLASSES),
        rownames=["truth"], colnames=["predicted"], dropna=False,
    )
    return EvaluationReport(
        accuracy=float(accuracy),
        overall_accuracy=float(accuracy_score(truth, predicted)),
        recall={name: float(r) for name, r in zip(ALL_CLASSES, recalls)},
        confusion=confusion,
    )
