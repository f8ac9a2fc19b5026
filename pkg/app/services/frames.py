"""
Frame discovery and loading
"""

import glob
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import structlog

from app.core.exceptions import ImageIOException
from imaging.io import IMAGE_SUFFIXES, read_image
from imaging.raster import RasterImage

logger = structlog.get_logger()


def discover_frames(source: Union[str, Path]) -> List[Path]:
    """Image files of a directory or glob pattern, ordered by file name"""
    source = str(source)
    path = Path(source)
    if path.is_dir():
        files = [p for p in path.iterdir() if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES]
    elif path.is_file():
        files = [path]
    else:
        files = [Path(p) for p in glob.glob(source) if Path(p).is_file()]
        if not files:
            raise ImageIOException(source, "no frames found")
    return sorted(files, key=lambda p: p.name)


def select_frames(paths: Sequence[Path], stride: int) -> List[Tuple[int, Path]]:
    """(frame_index, path) for every `stride`-th frame"""
    return [(i, p) for i, p in enumerate(paths) if i % stride == 0]


def load_frames(selected: Sequence[Tuple[int, Path]]) -> List[Tuple[int, RasterImage]]:
    frames = []
    for index, path in selected:
        frames.append((index, read_image(path)))
    logger.debug("Frames loaded", count=len(frames))
    return frames
