import itertools

import numpy as np
import pytest
from conftest import random_model

from mincpd.core.encoder import encode_partition
from mincpd.core.model import (
    CpdModel,
    ModeDistributions,
    evaluate_entry,
    leave_one_out,
    load_model,
    mode_gradients,
    negate_for_max,
    relaxed_objective,
    save_model,
)
from mincpd.core.oracle import brute_force_extreme
from mincpd.errors import BoundsError, FileFormatError, InvalidArgumentError, ShapeError


@pytest.fixture
def rank_one():
    return CpdModel((np.array([1.0, 2.0]), np.array([3.0, 4.0])))


def _dense(model: CpdModel) -> np.ndarray:
    return np.array([evaluate_entry(model, idx) for idx in itertools.product(*map(range, model.dims))])


class TestCpdModel:
    def test_shape_properties(self, rng):
        model = random_model(rng, (2, 3, 4), rank=5)
        assert model.order == 3
        assert model.rank == 5
        assert model.dims == (2, 3, 4)
        assert model.size == 24
        assert not model.is_complex

    def test_vectors_become_rank_one_columns(self, rank_one):
        assert rank_one.rank == 1
        assert rank_one.factors[0].shape == (2, 1)

    def test_rank_mismatch(self):
        with pytest.raises(ShapeError):
            CpdModel((np.ones((2, 2)), np.ones((2, 3))))

    def test_empty_model(self):
        with pytest.raises(ShapeError):
            CpdModel(())

    def test_non_finite_factor(self):
        with pytest.raises(InvalidArgumentError):
            CpdModel((np.array([[1.0], [np.nan]]),))

    def test_imaginary_part_in_real_model(self):
        with pytest.raises(InvalidArgumentError):
            CpdModel((np.array([[1.0 + 1j]]),), field="real")

    def test_factors_are_read_only(self, rank_one):
        with pytest.raises(ValueError):
            rank_one.factors[0][0, 0] = 5.0


class TestEvaluateEntry:
    def test_single_product(self, rank_one):
        assert evaluate_entry(rank_one, (1, 1)) == 8.0

    def test_partition_entry(self):
        model = encode_partition([1.0, 1.0])
        assert evaluate_entry(model, (0, 1)) == pytest.approx(2 * np.exp(2.0))

    def test_complex_uses_real_part(self):
        model = CpdModel((np.exp(1j * np.pi * np.arange(2))[:, None],), field="complex")
        assert evaluate_entry(model, (1,)) == pytest.approx(-1.0)

    def test_offset_is_added(self):
        model = CpdModel((np.array([1.0, 2.0]),), offset=0.5)
        assert evaluate_entry(model, (1,)) == 2.5

    def test_out_of_bounds_names_mode(self, rank_one):
        with pytest.raises(BoundsError, match="mode 1"):
            evaluate_entry(rank_one, (0, 2))

    def test_wrong_length(self, rank_one):
        with pytest.raises(ShapeError):
            evaluate_entry(rank_one, (0,))


class TestRelaxedObjective:
    def test_uniform_averages_the_tensor(self, rank_one):
        assert relaxed_objective(rank_one, ModeDistributions.uniform(rank_one.dims)) == pytest.approx(5.25)

    def test_point_mass_selects_entry(self, rng):
        model = random_model(rng, (3, 4, 2), rank=3, offset=1.5)
        for idx in [(0, 0, 0), (2, 3, 1), (1, 2, 0)]:
            dists = ModeDistributions.point_mass(model.dims, idx)
            assert relaxed_objective(model, dists) == pytest.approx(evaluate_entry(model, idx), rel=1e-10)

    def test_is_expectation_over_entries(self, rng):
        model = random_model(rng, (2, 3, 2), rank=2)
        probs = [rng.dirichlet(np.ones(size)) for size in model.dims]
        expected = sum(
            np.prod([p[i] for p, i in zip(probs, idx)]) * evaluate_entry(model, idx)
            for idx in itertools.product(*map(range, model.dims))
        )
        assert relaxed_objective(model, probs) == pytest.approx(expected, rel=1e-10)

    def test_dimension_mismatch(self, rank_one):
        with pytest.raises(ShapeError):
            relaxed_objective(rank_one, [np.array([0.5, 0.5]), np.array([1.0, 0.0, 0.0])])


class TestModeDistributions:
    def test_normalizes(self):
        dists = ModeDistributions((np.array([1.0, 3.0]),))
        np.testing.assert_allclose(dists.probs[0], [0.25, 0.75])

    def test_rejects_negative(self):
        with pytest.raises(InvalidArgumentError):
            ModeDistributions((np.array([1.5, -0.5]),))

    def test_point_mass_bounds(self):
        with pytest.raises(BoundsError):
            ModeDistributions.point_mass((2, 2), (0, 2))


class TestGradients:
    def test_leave_one_out_matches_naive(self, rng):
        rows = rng.standard_normal((5, 6))
        rows[1, 0] = 0.0
        rows[1, 2] = rows[3, 2] = 0.0
        rows[:, 4] = 0.0
        expected = np.stack([np.prod(np.delete(rows, n, axis=0), axis=0) for n in range(rows.shape[0])])
        np.testing.assert_allclose(leave_one_out(rows), expected, rtol=1e-12, atol=1e-300)

    @pytest.mark.parametrize("trial", range(50))
    def test_finite_differences(self, trial):
        rng = np.random.default_rng(trial)
        N = int(rng.integers(2, 7))
        dims = tuple(int(d) for d in rng.integers(1, 6, size=N))
        model = random_model(rng, dims, rank=int(rng.integers(1, 5)), zeros=0.2)
        probs = [rng.dirichlet(np.ones(size)) for size in dims]
        # a point mass copies planted zeros into p_n^T A_n
        if trial % 3 == 0:
            probs[0] = np.eye(dims[0])[0]

        gradients = mode_gradients(model, probs)
        h = 1e-6
        for n, size in enumerate(dims):
            for i in range(size):
                up = [p.copy() for p in probs]
                down = [p.copy() for p in probs]
                up[n][i] += h
                down[n][i] -= h
                numeric = (relaxed_objective(model, up) - relaxed_objective(model, down)) / (2 * h)
                assert gradients[n][i] == pytest.approx(numeric, rel=1e-6, abs=1e-6)

    def test_gradient_reproduces_objective(self, rng):
        # f is affine in p_n with no constant part beyond the offset
        model = random_model(rng, (3, 3, 3), rank=2, offset=2.0)
        probs = [rng.dirichlet(np.ones(3)) for _ in range(3)]
        value = relaxed_objective(model, probs)
        for p, g in zip(probs, mode_gradients(model, probs)):
            assert p @ g + model.offset == pytest.approx(value, rel=1e-10)

    def test_negate_for_max(self, rng):
        model = random_model(rng, (2, 3), rank=2, offset=1.0)
        np.testing.assert_allclose(_dense(negate_for_max(model)), -_dense(model))

    def test_double_negation_is_exact(self, rng):
        model = random_model(rng, (2, 2, 2), rank=3, offset=0.3)
        np.testing.assert_array_equal(_dense(negate_for_max(negate_for_max(model))), _dense(model))

    def test_maximum_is_negated_minimum(self, rank_one):
        assert brute_force_extreme(negate_for_max(rank_one)).value == -8.0

    def test_affine_in_each_mode(self, rng):
        model = random_model(rng, (3, 4, 2), rank=3)
        p = [rng.dirichlet(np.ones(size)) for size in model.dims]
        q = [v.copy() for v in p]
        q[1] = rng.dirichlet(np.ones(4))
        mixed = [v.copy() for v in p]
        mixed[1] = 0.3 * p[1] + 0.7 * q[1]
        expected = 0.3 * relaxed_objective(model, p) + 0.7 * relaxed_objective(model, q)
        assert relaxed_objective(model, mixed) == pytest.approx(expected, rel=1e-12)

    def test_complex_lift_changes_nothing(self, rng):
        model = random_model(rng, (3, 2, 4), rank=2, offset=0.5)
        lifted = CpdModel(tuple(f.astype(complex) for f in model.factors), field="complex", offset=0.5)
        probs = [rng.dirichlet(np.ones(size)) for size in model.dims]
        assert relaxed_objective(lifted, probs) == pytest.approx(relaxed_objective(model, probs), rel=1e-12)
        for a, b in zip(mode_gradients(lifted, probs), mode_gradients(model, probs)):
            np.testing.assert_allclose(a, b, rtol=1e-12)

    def test_single_zero_column(self):
        model = CpdModel((np.array([1.0, 2.0]), np.array([1.0, -1.0])))
        g1, g2 = mode_gradients(model, [np.array([0.5, 0.5]), np.array([0.5, 0.5])])
        np.testing.assert_array_equal(g1, [0.0, 0.0])
        np.testing.assert_allclose(g2, [1.5, -1.5])


class TestStorage:
    def test_round_trip_is_bit_exact(self, rng, tmp_path):
        model = random_model(rng, (3, 2, 4), rank=3, offset=np.pi)
        path = tmp_path / "model.json"
        save_model(model, path)
        loaded = load_model(path)
        assert loaded.offset == model.offset
        for a, b in zip(loaded.factors, model.factors):
            np.testing.assert_array_equal(a, b)

    def test_complex_round_trip(self, tmp_path):
        factor = np.exp(1j * np.linspace(0, 2, 6)).reshape(3, 2)
        model = CpdModel((factor, factor.conj()), field="complex")
        save_model(model, tmp_path / "c.json")
        loaded = load_model(tmp_path / "c.json")
        assert loaded.is_complex
        np.testing.assert_array_equal(loaded.factors[0], model.factors[0])

    def test_inconsistent_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"order": 2, "rank": 1, "dims": [2], "factors": [[[1], [2]]]}')
        with pytest.raises(FileFormatError):
            load_model(path)
