"""
Method I and Method II end to end
"""

import time

import numpy as np
import pytest

from fixtures.scenes import BLOB_BOXES, single_object_scene
from imaging.raster import RasterImage
from pipeline.methods import run_method, run_method1, run_method2, single_layer_segments


def _pixel_sets(segments):
    return sorted(s.pixel_set() for s in segments)


def _touches(segment, region):
    xs, ys = segment.pixels[:, 0], segment.pixels[:, 1]
    return bool(region[ys, xs].any())


def _box_pixels(box):
    x0, y0, x1, y1 = box
    return frozenset((x, y) for y in range(y0, y1 + 1) for x in range(x0, x1 + 1))


def _tier_image(result):
    out = np.full(result.foreground_mask.shape, -1, dtype=np.int8)
    for seg in result.segments:
        out[seg.pixels[:, 1], seg.pixels[:, 0]] = seg.tier[1]
    return out


def _check_partition(result):
    covered = np.zeros(result.foreground_mask.shape, dtype=int)
    for seg in result.segments:
        covered[seg.pixels[:, 1], seg.pixels[:, 0]] += 1
    assert covered.max(initial=0) <= 1
    assert np.array_equal(covered == 1, result.foreground_mask.bits)


class TestSimpleFrames:

    @pytest.mark.parametrize("method", [run_method1, run_method2])
    def test_empty_frame(self, method, default_settings):
        frame = RasterImage.rgb(np.full((16, 16, 3), 128, dtype=np.uint8))
        result = method(frame, default_settings)
        assert result.segments == []
        assert result.foreground_mask.count() == 0

    def test_single_object_one_segment_both_methods(self, fixture_settings):
        frame = single_object_scene()
        first = run_method1(frame, fixture_settings)
        second = run_method2(frame, fixture_settings)
        assert len(first.segments) == len(second.segments) == 1
        assert _pixel_sets(first.segments) == _pixel_sets(second.segments)
        assert second.layer1_segment_count == 1
        assert second.graph is None

    def test_dispatch(self, fixture_settings):
        frame = single_object_scene()
        assert run_method(frame, fixture_settings.with_overrides(method=2)).method == 2
        assert run_method(frame, fixture_settings).method == 1


class TestOverlapScene:

    def test_single_layer_joins_barrel_and_lane(self, scene, fixture_settings):
        segments = single_layer_segments(scene.frame, fixture_settings)
        joined = [
            s for s in segments
            if _touches(s, scene.region("barrel")) and _touches(s, scene.region("right_lane"))
        ]
        assert len(joined) == 1
        assert len(segments) == 2

    def test_method1_splits_lane_from_barrel(self, scene, fixture_settings):
        result = run_method1(scene.frame, fixture_settings)
        assert len(result.segments) == 9
        for seg in result.segments:
            assert not (_touches(seg, scene.region("barrel")) and _touches(seg, scene.region("lanes")))
        # lane-colored blobs on the barrel stay as their own components
        blob_sets = {_box_pixels(box) for box in BLOB_BOXES}
        assert blob_sets <= {s.pixel_set() for s in result.segments}
        _check_partition(result)

    def test_method2_merges_fragments(self, scene, fixture_settings):
        result = run_method2(scene.frame, fixture_settings.with_overrides(method=2))
        assert result.layer1_segment_count == 9
        assert len(result.segments) == 4
        assert len(result.segments) < result.layer1_segment_count
        for seg in result.segments:
            assert not (_touches(seg, scene.region("barrel")) and _touches(seg, scene.region("lanes")))
        right = [s for s in result.segments if _touches(s, scene.region("right_lane"))]
        assert len(right) == 1
        assert _touches(right[0], scene.region("blobs"))
        _check_partition(result)

    def test_methods_agree_without_noise(self, clean_scene, fixture_settings):
        first = run_method1(clean_scene.frame, fixture_settings)
        second = run_method2(clean_scene.frame, fixture_settings)
        assert first.foreground_mask == second.foreground_mask
        assert np.array_equal(_tier_image(first), _tier_image(second))

    def test_tiers_and_energies(self, scene, fixture_settings):
        result = run_method1(scene.frame, fixture_settings)
        assert all(s.tier[0] == 1 for s in result.segments)
        assert {s.tier[1] for s in result.segments} == {0, 1}
        assert set(result.energies) == {"layer1", "layer2"}

    def test_method2_energies_include_graph(self, scene, fixture_settings):
        result = run_method2(scene.frame, fixture_settings.with_overrides(method=2))
        assert set(result.energies) == {"layer1", "graph"}
        assert result.energy_row()["energy_layer2"] is None

    def test_class_mask(self, scene, fixture_settings):
        result = run_method1(scene.frame, fixture_settings)
        positive = sum(s.pixel_count for s in result.segments if s.label == 1)
        mask = result.class_mask()
        assert 0 < mask.count() == positive
        assert not (mask.bits & ~result.foreground_mask.bits).any()

    def test_label_image(self, scene, fixture_settings):
        result = run_method1(scene.frame, fixture_settings)
        image = result.label_image()
        assert image.max() == len(result.segments)
        assert np.array_equal(image > 0, result.foreground_mask.bits)


class TestStageTimes:

    @pytest.mark.parametrize("method,stages", [
        (1, {"preprocess", "layer1", "layer2", "components", "energy"}),
        (2, {"preprocess", "layer1", "components", "graph", "energy"}),
    ])
    def test_stages_cover_frame(self, method, stages, scene, fixture_settings):
        cfg = fixture_settings.with_overrides(method=method)
        start = time.perf_counter()
        result = run_method(scene.frame, cfg)
        wall_ms = (time.perf_counter() - start) * 1000.0
        assert set(result.per_stage_times) == stages
        assert all(v >= 0 for v in result.per_stage_times.values())
        assert abs(result.total_ms - wall_ms) <= 1.0

    @pytest.mark.slow
    @pytest.mark.parametrize("method,floor_fps", [(1, 11.0), (2, 6.0)])
    def test_throughput_floor(self, method, floor_fps, scene, fixture_settings):
        cfg = fixture_settings.with_overrides(method=method)
        run_method(scene.frame, cfg)
        frames = 20
        start = time.perf_counter()
        for i in range(frames):
            run_method(scene.frame, cfg, frame_index=i)
        fps = frames / (time.perf_counter() - start)
        assert fps >= floor_fps
