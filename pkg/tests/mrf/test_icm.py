"""
ICM sweeps, convergence and the exhaustive oracle
"""

import numpy as np
import pytest

from app.core.exceptions import DimensionMismatchException, LatticeTooLargeException
from fixtures.scenes import isolated_noise_field
from mrf.brute_force import brute_force_minimum, enumerate_labelings
from mrf.energy import icm_potential, single_site_improvements, total_energy
from mrf.fields import DataField, LabelField, MrfParams, initial_field
from mrf.icm import icm, icm_sweep, icm_trace


def _naive_sweep(labels, data, active, beta):
    """Site-by-site raster sweep, ties keep the current label"""
    labels = labels.copy()
    h, w = labels.shape
    flips = 0
    for y in range(h):
        for x in range(w):
            if not active[y, x]:
                continue
            nbrs = [
                labels[ny, nx] for ny, nx in ((y - 1, x), (y + 1, x), (y, x - 1), (y, x + 1))
                if 0 <= ny < h and 0 <= nx < w and active[ny, nx]
            ]
            energy = {}
            for cand in (1, -1):
                e = ((cand - data[y, x]) / 2.0) ** 2
                if nbrs:
                    e += beta / len(nbrs) * sum(((cand - f) / 2.0) ** 2 for f in nbrs)
                energy[cand] = e
            if energy[1] < energy[-1]:
                best = 1
            elif energy[-1] < energy[1]:
                best = -1
            else:
                best = labels[y, x]
            if best != labels[y, x]:
                flips += 1
                labels[y, x] = best
    return labels, flips


def _center_noise(beta):
    data = np.ones((5, 5))
    data[2, 2] = -1.0
    data = DataField(data)
    return icm_sweep(initial_field(data), data, MrfParams(beta))


class TestSweep:

    def test_fixed_point(self):
        data = DataField(np.ones((6, 6)))
        field, flips = icm_sweep(LabelField.uniform((6, 6), 1), data, MrfParams())
        assert flips == 0
        assert field == LabelField.uniform((6, 6), 1)

    def test_center_noise_removed(self):
        field, flips = _center_noise(1.8)
        assert flips == 1
        assert (field.labels == 1).all()

    def test_center_noise_kept_at_low_beta(self):
        field, flips = _center_noise(0.5)
        assert flips == 0
        assert field.labels[2, 2] == -1

    def test_matches_naive_sweep(self, rng):
        for beta in (0.0, 0.5, 1.8, 4.0):
            for _ in range(15):
                shape = tuple(rng.integers(1, 12, size=2))
                data = rng.uniform(-1, 1, shape)
                labels = np.where(rng.random(shape) < 0.5, 1, -1)
                active = rng.random(shape) < 0.85
                field = LabelField(labels, active)
                got, flips = icm_sweep(field, DataField(data), MrfParams(beta))
                want, want_flips = _naive_sweep(labels, data, active, beta)
                assert np.array_equal(got.labels, want)
                assert flips == want_flips

    def test_ties_keep_current_label(self):
        # centre: likelihoods tie at d = 0 and the neighbors split two and two
        active = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)
        data = np.zeros((3, 3))
        data[0, 1] = data[2, 1] = 1.0
        data[1, 0] = data[1, 2] = -1.0
        for centre in (1, -1):
            labels = np.array([[1, 1, 1], [-1, centre, -1], [1, 1, 1]])
            out, _ = icm_sweep(LabelField(labels, active), DataField(data), MrfParams(1.0))
            assert out.labels[1, 1] == centre

    def test_inactive_sites_untouched(self, rng):
        labels = np.where(rng.random((10, 10)) < 0.5, 1, -1)
        active = rng.random((10, 10)) < 0.5
        field = LabelField(labels, active)
        out = icm(field, DataField(rng.uniform(-1, 1, (10, 10))), MrfParams(1.8, 5))
        assert np.array_equal(out.labels[~active], labels[~active])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchException):
            icm_sweep(LabelField.uniform((2, 2)), DataField(np.ones((3, 3))), MrfParams())


class TestIcm:

    @pytest.mark.parametrize("beta", [0.0, 1.8, 4.0])
    def test_noise_free_stops_after_one_sweep(self, beta):
        labels = np.ones((8, 8), dtype=int)
        labels[2:5, 3:7] = -1
        field = LabelField(labels)
        trace = icm_trace(field, DataField.from_labels(field), MrfParams(beta, 5))
        assert trace.flips == (0,)
        assert trace.converged
        assert trace.field == field

    def test_isolated_noise_cleared(self):
        data, truth = isolated_noise_field(seed=3)
        assert int((data.values < 0).sum()) == 41
        trace = icm_trace(initial_field(data), data, MrfParams(1.8, 2))
        assert trace.field == truth
        assert trace.flips == (41, 0)

    def test_isolated_noise_kept_at_low_beta(self):
        data, truth = isolated_noise_field(seed=3)
        out = icm(initial_field(data), data, MrfParams(0.5, 2))
        assert out != truth
        assert int((out.labels == -1).sum()) == 41

    def test_runs_at_most_budget(self, rng):
        data = DataField(rng.uniform(-1, 1, (16, 16)))
        trace = icm_trace(initial_field(data), data, MrfParams(4.0, 3))
        assert 1 <= trace.sweeps <= 3
        assert len(trace.energies) == trace.sweeps

    def test_deterministic(self, rng):
        data = DataField(rng.uniform(-1, 1, (20, 20)))
        params = MrfParams(1.8, 2)
        assert icm(initial_field(data), data, params) == icm(initial_field(data), data, params)

    @pytest.mark.parametrize("beta", [0.5, 1.8, 4.0])
    def test_energy_never_increases(self, beta):
        rng = np.random.default_rng(int(beta * 10))
        for _ in range(100):
            data = DataField(rng.uniform(-1, 1, (16, 16)))
            field = LabelField(np.where(rng.random((16, 16)) < 0.5, 1, -1))
            params = MrfParams(beta, 4)
            energy = icm_potential(field, data, params)
            for _ in range(params.iterations):
                field, _ = icm_sweep(field, data, params)
                after = icm_potential(field, data, params)
                assert after <= energy + 1e-9
                energy = after


class TestLocalOptimality:

    def test_every_binary_3x3_instance(self):
        params = MrfParams(1.8, 50)
        for labeling in enumerate_labelings(9):
            data = DataField(labeling.reshape(3, 3).astype(np.float64))
            trace = icm_trace(initial_field(data), data, params, record_energy=False)
            assert trace.converged
            assert single_site_improvements(trace.field, data, params) == []
            _, best = brute_force_minimum(data, params)
            reached = total_energy(trace.field, data, params)
            assert best <= reached + 1e-9
            if abs(labeling.sum()) == 9:
                assert reached == best == 0.0

    @pytest.mark.parametrize("beta", [0.3, 1.0, 2.5])
    def test_random_real_data(self, beta, rng):
        params = MrfParams(beta, 50)
        for _ in range(30):
            data = DataField(rng.uniform(-1, 1, (4, 4)))
            start = LabelField(np.where(rng.random((4, 4)) < 0.5, 1, -1))
            trace = icm_trace(start, data, params, record_energy=False)
            assert trace.converged
            assert single_site_improvements(trace.field, data, params) == []


class TestBruteForce:

    def test_all_plus(self):
        field, energy = brute_force_minimum(DataField(np.ones((2, 2))), MrfParams(1.8))
        assert (field.labels == 1).all()
        assert energy == 0.0

    def test_line_smooths_middle(self):
        field, _ = brute_force_minimum(DataField(np.array([[1.0, -1.0, 1.0]])), MrfParams(1.8))
        assert field.labels.tolist() == [[1, 1, 1]]

    def test_ties_take_lowest_code(self):
        field, _ = brute_force_minimum(DataField(np.zeros((1, 2))), MrfParams(0.0))
        assert field.labels.tolist() == [[-1, -1]]

    def test_too_large(self):
        with pytest.raises(LatticeTooLargeException):
            brute_force_minimum(DataField(np.ones((4, 5))), MrfParams())

    def test_labeling_order(self):
        rows = enumerate_labelings(2)
        assert rows.tolist() == [[-1, -1], [-1, 1], [1, -1], [1, 1]]

    def test_matches_enumerated_total_energy(self, rng):
        for _ in range(10):
            data = DataField(rng.uniform(-1, 1, (3, 3)))
            active = rng.random((3, 3)) < 0.8
            params = MrfParams(float(rng.uniform(0, 4)))
            field, energy = brute_force_minimum(data, params, active)
            totals = [
                total_energy(LabelField(labels.reshape(3, 3), active), data, params)
                for labels in enumerate_labelings(9)
            ]
            assert energy == pytest.approx(min(totals), abs=1e-9)
            assert total_energy(field, data, params) == pytest.approx(min(totals), abs=1e-9)
