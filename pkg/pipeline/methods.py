"""
The two hierarchy methods

Method I stacks two lattice layers: layer 1 denoises the binary
foreground, layer 2 splits the foreground by gray level. Method II runs a
single gray-level lattice layer over the preprocessed foreground, then an
unstructured kNN layer that relabels and merges its segments.
"""

from typing import List

import numpy as np
import structlog

from app.config import PipelineSettings
from imaging.components import Segment, connected_components, label_regions
from imaging.raster import BinaryMask, RasterImage
from mrf.energy import total_energy
from mrf.fields import DataField, LabelField, MrfParams, initial_field, normalize_gray
from mrf.icm import icm
from pipeline.preprocess import preprocess_planes
from pipeline.result import FrameResult, StageClock
from segraph.graph import build_knn_graph
from segraph.icm_graph import graph_energy, icm_graph
from segraph.merge import merge_segments

logger = structlog.get_logger()


def _tier(label: int) -> tuple:
    return 1, 1 if label == 1 else 0


def _empty_result(frame_index: int, method: int, shape, clock: StageClock) -> FrameResult:
    return FrameResult(frame_index, method, BinaryMask.empty(shape), [], dict(clock.times))


def denoise_foreground(mask: BinaryMask, cfg: PipelineSettings) -> LabelField:
    """Layer 1 of Method I: ICM on the ±1 mask with the mask as data"""
    field = LabelField.from_mask(mask)
    return icm(field, DataField.from_mask(mask), MrfParams(cfg.beta_layer1, cfg.iterations))


def run_method1(frame: RasterImage, cfg: PipelineSettings, frame_index: int = 0) -> FrameResult:
    """Fully structured hierarchy"""
    clock = StageClock()
    with clock.stage("preprocess"):
        pre = preprocess_planes(frame, cfg)
    if not pre.mask.bits.any():
        return _empty_result(frame_index, 1, frame.shape, clock)

    with clock.stage("layer1"):
        layer1 = denoise_foreground(pre.mask, cfg)
        foreground = layer1.labels == 1
    if not foreground.any():
        return _empty_result(frame_index, 1, frame.shape, clock)

    with clock.stage("layer2"):
        params2 = MrfParams(cfg.beta_layer2, cfg.iterations)
        gray = normalize_gray(pre.luminance)
        layer2 = icm(initial_field(gray, active=foreground), gray, params2)

    with clock.stage("components"):
        class_bit = (layer2.labels == 1).astype(np.int8)
        segments = [
            Segment.from_coords(i, ys, xs, label=1 if code == 1 else -1, tier=(1, int(code)))
            for i, (code, ys, xs) in enumerate(label_regions(class_bit, foreground))
        ]

    with clock.stage("energy"):
        energies = {
            "layer1": total_energy(
                layer1, DataField.from_mask(pre.mask), MrfParams(cfg.beta_layer1, cfg.iterations)
            ),
            "layer2": total_energy(layer2, gray, params2),
        }
    logger.debug("Method I frame", frame=frame_index, segments=len(segments))
    return FrameResult(frame_index, 1, BinaryMask(foreground), segments, dict(clock.times),
                       energies=energies)


def run_method2(frame: RasterImage, cfg: PipelineSettings, frame_index: int = 0) -> FrameResult:
    """Partially structured hierarchy"""
    clock = StageClock()
    with clock.stage("preprocess"):
        pre = preprocess_planes(frame, cfg)
    if not pre.mask.bits.any():
        return _empty_result(frame_index, 2, frame.shape, clock)

    foreground = pre.mask.bits
    with clock.stage("layer1"):
        params1 = MrfParams(cfg.beta_layer1, cfg.iterations)
        gray = normalize_gray(pre.luminance)
        layer1 = icm(initial_field(gray, active=foreground), gray, params1)

    with clock.stage("components"):
        segments = [
            Segment(s.id, s.pixels, s.label, _tier(s.label)) for s in connected_components(layer1)
        ]
    layer1_count = len(segments)

    graph = None
    with clock.stage("graph"):
        if len(segments) > 1:
            graph = build_knn_graph(segments, cfg.k, gray=gray)
            graph = icm_graph(graph, cfg.beta_u, cfg.iterations)
            segments = merge_segments(graph, segments)

    with clock.stage("energy"):
        energies = {"layer1": total_energy(layer1, gray, params1)}
        if graph is not None:
            energies["graph"] = graph_energy(graph, cfg.beta_u)

    logger.debug("Method II frame", frame=frame_index, layer1_segments=layer1_count,
                 segments=len(segments))
    return FrameResult(frame_index, 2, BinaryMask(foreground), segments, dict(clock.times),
                       layer1_segment_count=layer1_count, energies=energies, graph=graph)


def run_method(frame: RasterImage, cfg: PipelineSettings, frame_index: int = 0) -> FrameResult:
    if cfg.method == 1:
        return run_method1(frame, cfg, frame_index)
    return run_method2(frame, cfg, frame_index)


def single_layer_segments(frame: RasterImage, cfg: PipelineSettings) -> List[Segment]:
    """Foreground components after layer-1 denoising only, no class split"""
    pre = preprocess_planes(frame, cfg)
    layer1 = denoise_foreground(pre.mask, cfg)
    return [s for s in connected_components(layer1) if s.label == 1]
