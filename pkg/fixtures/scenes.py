"""
Synthetic test scenes and calibration fields

The overlap scene is a striped traffic barrel on grass with two lanes; the
right lane runs behind the barrel so the foreground mask joins them. Lane
colored blobs sit on the bottom of the barrel and dark blobs on the left
lane. Grass colored shot noise is the only seeded component: object
geometry is identical for every seed.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np
import structlog
from scipy import ndimage

from imaging.io import write_pgm, write_ppm
from imaging.raster import BinaryMask, RasterImage
from mrf.fields import DataField, LabelField

logger = structlog.get_logger()

SCENE_WIDTH, SCENE_HEIGHT = 160, 120

GRASS = (100, 110, 95)
LANE = (250, 240, 150)
BARREL = (220, 100, 10)
STRIPE = (40, 20, 10)

LANE_HALF_WIDTH = 3
BARREL_BOX = (92, 38, 129, 87)  # x0, y0, x1, y1 inclusive
STRIPE_ROWS = ((45, 49), (60, 64))
BLOB_BOXES = ((98, 76, 101, 79), (118, 76, 121, 79))
RIGHT_LANE_X = (84, 140)  # lane center at top and bottom row
LEFT_LANE_X = (50, 8)
DARK_BLOB_ROWS = (50, 60, 70)
SHOT_NOISE_FRACTION = 0.15
NOISE_MARGIN = 3

FIXTURE_CONFIG = """\
# Overlap scene configuration
alpha_s = auto
alpha_l = 60
open_radius = 1
beta_layer1 = 1.8
beta_layer2 = 1.8
iterations = 2
k = 3
beta_u = 0.001
"""


@dataclass(frozen=True)
class OverlapScene:
    """Rendered frame plus ground-truth pixel regions"""
    frame: RasterImage
    regions: Dict[str, np.ndarray]

    def region(self, name: str) -> np.ndarray:
        return self.regions[name]


def _lane_mask(x_top: int, x_bottom: int) -> np.ndarray:
    mask = np.zeros((SCENE_HEIGHT, SCENE_WIDTH), dtype=bool)
    for y in range(SCENE_HEIGHT):
        c = int(round(x_top + (x_bottom - x_top) * y / (SCENE_HEIGHT - 1)))
        mask[y, max(0, c - LANE_HALF_WIDTH):c + LANE_HALF_WIDTH + 1] = True
    return mask


def _lane_center(x_top: int, x_bottom: int, y: int) -> int:
    return int(round(x_top + (x_bottom - x_top) * y / (SCENE_HEIGHT - 1)))


def _box(box: Tuple[int, int, int, int]) -> np.ndarray:
    x0, y0, x1, y1 = box
    mask = np.zeros((SCENE_HEIGHT, SCENE_WIDTH), dtype=bool)
    mask[y0:y1 + 1, x0:x1 + 1] = True
    return mask


def _geometry() -> Dict[str, np.ndarray]:
    barrel = _box(BARREL_BOX)
    stripes = np.zeros_like(barrel)
    for y0, y1 in STRIPE_ROWS:
        stripes[y0:y1 + 1] = True
    stripes &= barrel
    blobs = np.zeros_like(barrel)
    for box in BLOB_BOXES:
        blobs |= _box(box)

    right = _lane_mask(*RIGHT_LANE_X) & ~barrel
    left = _lane_mask(*LEFT_LANE_X)
    dark_blobs = np.zeros_like(barrel)
    for y in DARK_BLOB_ROWS:
        c = _lane_center(*LEFT_LANE_X, y)
        dark_blobs[y - 1:y + 2, c - 1:c + 2] = True

    return {
        "barrel": barrel,
        "stripes": stripes,
        "blobs": blobs,
        "right_lane": right,
        "left_lane": left,
        "dark_blobs": dark_blobs,
    }


def _shot_noise(geometry: Dict[str, np.ndarray], rng: np.random.Generator) -> np.ndarray:
    """Isolated pixels on a 3-pixel lattice inside plain lane or barrel paint"""
    lane_paint = (geometry["right_lane"] | geometry["left_lane"]) & ~geometry["dark_blobs"]
    barrel_paint = geometry["barrel"] & ~geometry["stripes"] & ~geometry["blobs"]
    keep_out = ndimage.binary_dilation(geometry["blobs"] | geometry["dark_blobs"],
                                       iterations=NOISE_MARGIN)

    eligible = np.zeros_like(lane_paint)
    for paint in (lane_paint, barrel_paint):
        eligible |= ndimage.binary_erosion(paint, structure=ndimage.generate_binary_structure(2, 1))
    lattice = np.zeros_like(eligible)
    lattice[1::3, 1::3] = True
    candidates = np.argwhere(eligible & lattice & ~keep_out)

    count = int(round(SHOT_NOISE_FRACTION * len(candidates)))
    chosen = candidates[np.sort(rng.choice(len(candidates), size=count, replace=False))]
    noise = np.zeros_like(eligible)
    noise[chosen[:, 0], chosen[:, 1]] = True
    return noise


def overlap_scene(seed: int = 0, noise: bool = True) -> OverlapScene:
    """Barrel with two lanes, one running behind it"""
    geometry = _geometry()
    pixels = np.empty((SCENE_HEIGHT, SCENE_WIDTH, 3), dtype=np.uint8)
    pixels[:] = GRASS
    pixels[geometry["right_lane"]] = LANE
    pixels[geometry["barrel"]] = BARREL
    pixels[geometry["stripes"]] = STRIPE
    pixels[geometry["left_lane"]] = LANE

    blobs = geometry["blobs"] if noise else np.zeros_like(geometry["blobs"])
    dark_blobs = geometry["dark_blobs"] if noise else np.zeros_like(geometry["dark_blobs"])
    shot = _shot_noise(geometry, np.random.default_rng(seed)) if noise else np.zeros_like(blobs)
    pixels[blobs] = LANE
    pixels[dark_blobs] = STRIPE
    pixels[shot] = GRASS

    clean = ~(blobs | dark_blobs | shot)
    rows = np.arange(SCENE_HEIGHT)[:, None]
    regions = {
        "barrel": geometry["barrel"] & clean,
        "right_lane": geometry["right_lane"] & clean,
        "right_lane_upper": geometry["right_lane"] & clean & (rows < BARREL_BOX[1]),
        "right_lane_lower": geometry["right_lane"] & clean & (rows > BARREL_BOX[3]),
        "left_lane": geometry["left_lane"] & clean,
        "blobs": blobs,
        "dark_blobs": dark_blobs,
        "shot_noise": shot,
    }
    regions["lanes"] = regions["right_lane"] | regions["left_lane"]
    return OverlapScene(RasterImage.rgb(pixels), regions)


def single_object_scene(width: int = 64, height: int = 48) -> RasterImage:
    """One orange barrel-colored rectangle on grass"""
    pixels = np.empty((height, width, 3), dtype=np.uint8)
    pixels[:] = GRASS
    pixels[height // 4:3 * height // 4, width // 3:2 * width // 3] = BARREL
    return RasterImage.rgb(pixels)


def _lattice_positions(shape: Tuple[int, int], step_y: int, step_x: int,
                       margin: int = 1) -> np.ndarray:
    ys = np.arange(margin, shape[0] - margin, step_y)
    xs = np.arange(margin, shape[1] - margin, step_x)
    return np.array([(y, x) for y in ys for x in xs], dtype=np.int64)


def _pair(shape: Tuple[int, int], flipped: np.ndarray) -> Tuple[DataField, LabelField]:
    truth = LabelField.uniform(shape, 1)
    data = np.where(flipped, -1.0, 1.0)
    return DataField(data), truth


def isolated_noise_field(shape: Tuple[int, int] = (64, 64), fraction: float = 0.01,
                         seed: int = 0) -> Tuple[DataField, LabelField]:
    """Uniform +1 truth; `fraction` of sites flipped, no two flips within 2 sites"""
    rng = np.random.default_rng(seed)
    candidates = _lattice_positions(shape, 3, 3)
    count = int(round(fraction * shape[0] * shape[1]))
    if count > len(candidates):
        raise ValueError(f"{count} isolated flips do not fit a {shape} lattice")
    chosen = candidates[np.sort(rng.choice(len(candidates), size=count, replace=False))]
    flipped = np.zeros(shape, dtype=bool)
    flipped[chosen[:, 0], chosen[:, 1]] = True
    return _pair(shape, flipped)


def random_noise_field(shape: Tuple[int, int] = (64, 64), fraction: float = 0.10,
                       seed: int = 0) -> Tuple[DataField, LabelField]:
    """Uniform +1 truth; each site flipped independently with probability `fraction`"""
    rng = np.random.default_rng(seed)
    return _pair(shape, rng.random(shape) < fraction)


def ordering_fields(shape: Tuple[int, int] = (32, 32)) -> Dict[str, Tuple[DataField, LabelField]]:
    """
    Three noise structures of increasing resistance to smoothing

    "b": isolated interior flips, "c": interior horizontal flip pairs,
    "a": horizontal flip pairs on the top edge away from the corners.
    """
    b = np.zeros(shape, dtype=bool)
    for y, x in _lattice_positions(shape, 4, 4, margin=2):
        b[y, x] = True

    c = np.zeros(shape, dtype=bool)
    for y, x in _lattice_positions(shape, 4, 5, margin=2):
        if x + 1 < shape[1] - 1:
            c[y, x:x + 2] = True

    a = np.zeros(shape, dtype=bool)
    for x in range(2, shape[1] - 3, 4):
        a[0, x:x + 2] = True

    return {"a": _pair(shape, a), "b": _pair(shape, b), "c": _pair(shape, c)}


def _field_image(data: DataField) -> RasterImage:
    return RasterImage.gray(np.where(data.values > 0, 255, 0).astype(np.uint8))


def generate_fixtures(out_dir: Union[str, Path], seed: int = 0, noise: bool = True) -> List[Path]:
    """Write the overlap scene, its truth regions, calibration fields and config"""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: List[Path] = []

    scene = overlap_scene(seed, noise)
    written.append(write_ppm(scene.frame, out / "overlap.ppm"))
    for name in ("barrel", "lanes", "blobs"):
        written.append(write_pgm(BinaryMask(scene.region(name)), out / f"overlap_{name}.pgm"))
    config = out / "fixture.conf"
    config.write_text(FIXTURE_CONFIG)
    written.append(config)

    fields = {
        "noise_01": isolated_noise_field(seed=seed),
        "noise_10": random_noise_field(seed=seed),
        **{f"table_{k}": v for k, v in ordering_fields().items()},
    }
    for name, (data, truth) in fields.items():
        written.append(write_pgm(_field_image(data), out / "calibration" / f"{name}.pgm"))
        written.append(write_pgm(truth.foreground(), out / "calibration_truth" / f"{name}.pgm"))

    logger.info("Fixtures written", out=str(out), files=len(written), seed=seed, noise=noise)
    return written
