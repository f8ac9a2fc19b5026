"""
Class model resolution: saved file, training manifest or synthetic segments
"""

from pathlib import Path
from typing import List, Optional

import pandas as pd
import structlog

from app.config import PipelineSettings
from app.core.exceptions import ConfigurationException, ImageIOException
from classification.features import SegmentClass
from classification.model import ClassModel, LabeledSegment, train
from fixtures.segments import SYNTHETIC_DIMS, synthetic_segments
from imaging.io import read_image
from pipeline.methods import run_method

logger = structlog.get_logger()

MANIFEST_COLUMNS = ("image", "segment_id", "label")


class ClassificationService:
    """Produce the ClassModel a run classifies with"""

    def __init__(self, settings: PipelineSettings):
        self.settings = settings

    def resolve_model(self, model_path: Optional[Path] = None,
                      manifest_path: Optional[Path] = None) -> ClassModel:
        if model_path is not None and Path(model_path).exists():
            model = ClassModel.load(model_path)
            logger.info("Class model loaded", path=str(model_path))
            return model

        if manifest_path is not None:
            model = self.train_from_manifest(manifest_path)
        else:
            model = train(synthetic_segments(seed=self.settings.seed, include_noise=False),
                          SYNTHETIC_DIMS)
            logger.info("Class model trained on synthetic segments", seed=self.settings.seed)

        if model_path is not None:
            model.save(model_path)
            logger.info("Class model saved", path=str(model_path))
        return model

    def train_from_manifest(self, manifest_path: Path) -> ClassModel:
        """
        Train from a CSV of (image, segment_id, label)

        Each listed image is segmented with the current settings; image
        paths are relative to the manifest.
        """
        manifest_path = Path(manifest_path)
        try:
            manifest = pd.read_csv(manifest_path)
        except (OSError, pd.errors.ParserError) as e:
            raise ImageIOException(str(manifest_path), str(e)) from e
        missing = [c for c in MANIFEST_COLUMNS if c not in manifest.columns]
        if missing:
            raise ConfigurationException(f"Training manifest lacks columns: {missing}")

        labeled: List[LabeledSegment] = []
        dims = None
        for image_name, rows in manifest.groupby("image", sort=True):
            frame = read_image(manifest_path.parent / str(image_name))
            dims = (frame.width, frame.height)
            segments = {s.id: s for s in run_method(frame, self.settings).segments}
            for _, row in rows.iterrows():
                segment = segments.get(int(row["segment_id"]))
                if segment is None:
                    logger.warning("Manifest segment not found", image=image_name,
                                   segment=int(row["segment_id"]))
                    continue
                try:
                    labeled.append((segment, SegmentClass(str(row["label"]))))
                except ValueError as e:
                    raise ConfigurationException(f"Unknown class label: {row['label']}") from e

        if dims is None:
            raise ConfigurationException(f"Training manifest {manifest_path} is empty")
        logger.info("Training manifest read", path=str(manifest_path), examples=len(labeled))
        return train(labeled, dims)
