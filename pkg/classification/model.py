"""
Per-class feature means and priors
"""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

import pandas as pd
import structlog

from app.core.exceptions import (
    ImageIOException,
    InvalidModelException,
    MissingClassException,
    ModelNotTrainedException,
)
from classification.features import (
    CLASS_ORDER,
    FEATURE_NAMES,
    LANE_CLASSES,
    OBJECT_CLASSES,
    FrameDims,
    SegmentClass,
    extract_features,
)
from imaging.components import Segment

logger = structlog.get_logger()

DEFAULT_ERROR_THRESHOLD = math.exp(-1.0)
MIN_PIXELS_FRACTION = 0.5

LabeledSegment = Tuple[Segment, SegmentClass]


@dataclass(frozen=True)
class ClassModel:
    """
    Trained classifier state

    `error_threshold` scales the largest prior of a branch into that
    branch's rejection floor. `min_pixels` rejects segments too small to
    be any trained class.
    """
    means: Mapping[SegmentClass, Mapping[str, float]] = field(default_factory=dict)
    priors: Mapping[SegmentClass, float] = field(default_factory=dict)
    error_threshold: float = DEFAULT_ERROR_THRESHOLD
    min_pixels: float = 0.0

    def __post_init__(self):
        if self.means or self.priors:
            self.validate()

    @property
    def is_trained(self) -> bool:
        return bool(self.means)

    def require_trained(self) -> None:
        if not self.is_trained:
            raise ModelNotTrainedException()

    def validate(self) -> None:
        for cls in CLASS_ORDER:
            if cls not in self.means or cls not in self.priors:
                raise InvalidModelException(f"class {cls.value} missing")
            for feature in FEATURE_NAMES:
                mean = self.means[cls].get(feature)
                if mean is None:
                    raise InvalidModelException(f"{cls.value} has no mean for {feature}")
                if not mean > 0:
                    raise InvalidModelException(f"{cls.value} mean of {feature} is {mean}")
        total = sum(self.priors[c] for c in CLASS_ORDER)
        if not math.isclose(total, 1.0, abs_tol=1e-9):
            raise InvalidModelException(f"priors sum to {total}")
        if not 0.0 < self.error_threshold < 1.0:
            raise InvalidModelException(f"error threshold {self.error_threshold} outside (0, 1)")

    def mean(self, cls: SegmentClass, feature: str) -> float:
        return float(self.means[cls][feature])

    def prior(self, cls: SegmentClass) -> float:
        return float(self.priors[cls])

    def family_prior(self, classes: Sequence[SegmentClass]) -> float:
        return float(sum(self.priors[c] for c in classes))

    def family_mean(self, classes: Sequence[SegmentClass], feature: str) -> float:
        """Prior-weighted mean, i.e. the pooled training mean of the family"""
        weight = self.family_prior(classes)
        return float(sum(self.priors[c] * self.means[c][feature] for c in classes) / weight)

    def to_frame(self) -> pd.DataFrame:
        """One row per class: prior then feature means"""
        rows = [
            {"class": cls.value, "prior": self.priors[cls], **self.means[cls]}
            for cls in CLASS_ORDER
        ]
        return pd.DataFrame(rows).set_index("class")

    def save(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps_model(self))
        return path

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ClassModel":
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as e:
            raise ImageIOException(str(path), str(e)) from e
        return loads_model(text)


def dumps_model(model: ClassModel) -> str:
    model.require_trained()
    lines = [
        "# class model: prior.<class>, mean.<class>.<feature>",
        f"error_threshold = {model.error_threshold!r}",
        f"min_pixels = {model.min_pixels!r}",
    ]
    for cls in CLASS_ORDER:
        lines.append(f"prior.{cls.value} = {float(model.priors[cls])!r}")
    for cls in CLASS_ORDER:
        for feature in FEATURE_NAMES:
            lines.append(f"mean.{cls.value}.{feature} = {float(model.means[cls][feature])!r}")
    return "\n".join(lines) + "\n"


def loads_model(text: str) -> ClassModel:
    values: Dict[str, float] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InvalidModelException(f"line {number}: expected key = value")
        try:
            values[key.strip()] = float(value.strip())
        except ValueError as e:
            raise InvalidModelException(f"line {number}: {value.strip()!r} is not a number") from e

    by_name = {c.value: c for c in CLASS_ORDER}
    means: Dict[SegmentClass, Dict[str, float]] = {c: {} for c in CLASS_ORDER}
    priors: Dict[SegmentClass, float] = {}
    for key, value in values.items():
        parts = key.split(".")
        if parts[0] == "prior" and len(parts) == 2 and parts[1] in by_name:
            priors[by_name[parts[1]]] = value
        elif parts[0] == "mean" and len(parts) == 3 and parts[1] in by_name and parts[2] in FEATURE_NAMES:
            means[by_name[parts[1]]][parts[2]] = value
        elif key not in ("error_threshold", "min_pixels"):
            raise InvalidModelException(f"unknown key {key}")
    return ClassModel(
        means=means,
        priors=priors,
        error_threshold=values.get("error_threshold", DEFAULT_ERROR_THRESHOLD),
        min_pixels=values.get("min_pixels", 0.0),
    )


def train(labeled: Iterable[LabeledSegment], frame_dims: FrameDims,
          error_threshold: float = DEFAULT_ERROR_THRESHOLD) -> ClassModel:
    """Class means and empirical priors; Error examples are ignored"""
    rows = []
    skipped = 0
    for segment, cls in labeled:
        cls = SegmentClass(cls)
        if cls is SegmentClass.ERROR:
            skipped += 1
            continue
        rows.append({"class": cls.value, **extract_features(segment, frame_dims).as_dict()})
    frame = pd.DataFrame(rows, columns=["class", *FEATURE_NAMES])

    present = set(frame["class"])
    for cls in CLASS_ORDER:
        if cls.value not in present:
            raise MissingClassException(cls.value)

    grouped = frame.groupby("class", sort=False)[list(FEATURE_NAMES)].mean()
    counts = frame["class"].value_counts()
    means = {cls: {f: float(grouped.loc[cls.value, f]) for f in FEATURE_NAMES} for cls in CLASS_ORDER}
    priors = {cls: float(counts[cls.value]) / len(frame) for cls in CLASS_ORDER}
    min_pixels = MIN_PIXELS_FRACTION * float(frame["pixel_count"].min())

    logger.info("Class model trained", examples=len(frame), ignored_errors=skipped,
                min_pixels=min_pixels)
    return ClassModel(means, priors, error_threshold, min_pixels)


def feature_deviation_ratios(model: ClassModel,
                             first: Sequence[SegmentClass] = LANE_CLASSES,
                             second: Sequence[SegmentClass] = OBJECT_CLASSES) -> pd.Series:
    """
    Larger-over-smaller ratio of the two groups' mean per feature

    Sorted descending, so the first entry is the feature that separates
    the groups best.
    """
    model.require_trained()
    ratios = {}
    for feature in FEATURE_NAMES:
        a = model.family_mean(first, feature)
        b = model.family_mean(second, feature)
        ratios[feature] = max(a, b) / min(a, b)
    return pd.Series(ratios, name="deviation_ratio").sort_values(ascending=False, kind="stable")
