import itertools

import numpy as np
import pytest

from mincpd.core.encoder import (
    GfLInstance,
    IlpInstance,
    IlsInstance,
    IqpInstance,
    LatticeSpec,
    MultiwayPartitionInstance,
    OverdetGf2Instance,
    ParityInstance,
    PartitionInstance,
    SignRetrievalInstance,
    awgn_scale,
    encode,
    encode_gf_l,
    encode_ilp,
    encode_ils,
    encode_iqp,
    encode_multiway_partition,
    encode_overdet_gf2,
    encode_parity_awgn,
    encode_parity_bsc,
    encode_partition,
    encode_sign_retrieval,
    parse_instance,
    recover_sign_retrieval_x,
    write_alist,
)
from mincpd.core.model import CpdModel, evaluate_entry
from mincpd.core.oracle import brute_force_extreme, direct_cost_probe, is_codeword
from mincpd.errors import (
    EncodingOverflowError,
    FileFormatError,
    InvalidArgumentError,
    ShapeError,
    SingularSystemError,
)


def _random_tuples(rng, dims, count=100):
    return [tuple(int(rng.integers(size)) for size in dims) for _ in range(count)]


def _all_tuples(model: CpdModel):
    return itertools.product(*map(range, model.dims))


def _random_instances(rng):
    """One random instance of every problem family, with its expected rank and tolerance."""
    H = rng.standard_normal((4, 3))
    sign_A = rng.standard_normal((8, 3))
    C = rng.integers(0, 2, size=(3, 6))
    yield PartitionInstance(rng.random(6) / 3), 2, 1e-8
    yield MultiwayPartitionInstance(rng.random(5), 3), 6, 1e-8
    yield IlsInstance(H, rng.standard_normal(4), LatticeSpec.uniform([-1, 0, 1], 3)), 6, 1e-10
    yield IqpInstance(rng.standard_normal((4, 4)), LatticeSpec.uniform([0, 1, 2], 4)), 10, 1e-10
    yield IqpInstance(rng.standard_normal((5, 5)), LatticeSpec.uniform([1, -1], 5)), 10, 1e-10
    ternary = LatticeSpec.uniform([0, 1, 2], 3)
    yield IlpInstance(rng.integers(-2, 3, (2, 3)), rng.integers(0, 3, 2), rng.standard_normal(3), ternary), 3, 1e-8
    magnitudes = np.abs(sign_A @ rng.standard_normal(3) + 0.5 * rng.standard_normal(8))
    yield SignRetrievalInstance(sign_A, magnitudes), 28, 1e-9
    yield ParityInstance(C, rng.integers(0, 2, 6)), 4, 1e-10
    yield ParityInstance(C, rng.random(6), "awgn"), 4, 1e-10
    yield GfLInstance(rng.integers(0, 4, (2, 3)), rng.integers(0, 4, 2), 3 * rng.random(3), L=4), 3, 1e-10
    yield OverdetGf2Instance(rng.integers(0, 2, (8, 5)), rng.integers(0, 2, 8)), 8, 1e-10


class TestFidelity:
    @pytest.mark.parametrize("seed", range(3))
    def test_entries_match_problem_costs(self, seed):
        rng = np.random.default_rng(seed)
        for inst, rank, tol in _random_instances(rng):
            model = encode(inst)
            assert model.rank == rank, type(inst).__name__
            for idx in _random_tuples(rng, model.dims):
                expected = direct_cost_probe(inst, idx)
                assert evaluate_entry(model, idx) == pytest.approx(expected, rel=tol, abs=tol), type(inst).__name__

    def test_unknown_problem(self):
        with pytest.raises(InvalidArgumentError):
            encode("not an instance")


class TestPartition:
    def test_factors(self):
        model = encode_partition([1.0, 1.0])
        e = np.exp(2.0)
        for factor in model.factors:
            np.testing.assert_array_equal(factor, [[1.0, e], [e, 1.0]])
        assert evaluate_entry(model, (0, 1)) == pytest.approx(2 * e)

    def test_perfect_partition_reaches_threshold(self):
        inst = PartitionInstance(np.array([1.0, 2.0, 3.0]))
        assert brute_force_extreme(encode_partition(inst)).value == pytest.approx(inst.threshold, rel=1e-12)
        assert inst.threshold == pytest.approx(2 * np.exp(6.0))

    def test_no_perfect_partition_stays_above(self):
        inst = PartitionInstance(np.array([1.0, 1.0, 1.0]))
        best = brute_force_extreme(encode_partition(inst)).value
        assert best == pytest.approx(np.exp(4.0) + np.exp(2.0))
        assert best > inst.threshold

    def test_overflow(self):
        with pytest.raises(EncodingOverflowError, match="normalize"):
            encode_partition([400.0, 1.0])

    def test_rejects_non_positive_weights(self):
        with pytest.raises(InvalidArgumentError):
            encode_partition([1.0, 0.0])


class TestMultiwayPartition:
    def test_two_groups_formula(self, rng):
        w = rng.random(6)
        model = encode_multiway_partition(w, 2)
        half = np.exp(w.sum() / 2)
        for idx in _random_tuples(rng, model.dims, 50):
            first = w[np.array(idx) == 0].sum()
            expected = (np.exp(first) - half) ** 2 + (np.exp(w.sum() - first) - half) ** 2
            assert evaluate_entry(model, idx) == pytest.approx(expected, rel=1e-9, abs=1e-9)

    def test_balanced_split_is_zero(self):
        model = encode_multiway_partition([1.0, 1.0, 1.0, 1.0], 2)
        assert brute_force_extreme(model).value == pytest.approx(0.0, abs=1e-9)

    def test_rank_and_dims(self):
        model = encode_multiway_partition([0.2, 0.3, 0.1, 0.4], 3)
        assert model.rank == 6
        assert model.dims == (3, 3, 3, 3)


class TestQuadratic:
    def test_ils_consistent_system(self):
        model = encode_ils(np.eye(2), np.array([1.0, 0.0]), LatticeSpec.uniform([0, 1], 2))
        best = brute_force_extreme(model)
        assert best.indices == (1, 0)
        assert best.value == pytest.approx(0.0, abs=1e-12)

    def test_ils_rank(self, rng):
        model = encode_ils(rng.standard_normal((5, 3)), rng.standard_normal(5), LatticeSpec.uniform([0, 1], 3))
        assert model.rank == 6

    def test_ils_lattice_mismatch(self):
        with pytest.raises(ShapeError):
            encode_ils(np.eye(3), np.zeros(3), LatticeSpec.uniform([0, 1], 2))

    def test_iqp_identity_on_signs_is_constant(self):
        model = encode_iqp(np.eye(4), LatticeSpec.uniform([1, -1], 4))
        assert model.rank == 6
        assert model.offset == 4.0
        assert {evaluate_entry(model, idx) for idx in _all_tuples(model)} == {4.0}

    def test_iqp_symmetrization(self, rng):
        Q = rng.standard_normal((3, 3))
        lattice = LatticeSpec.uniform([0, 1, 2], 3)
        a, b = encode_iqp(Q, lattice), encode_iqp((Q + Q.T) / 2, lattice)
        for idx in _all_tuples(a):
            assert evaluate_entry(a, idx) == pytest.approx(evaluate_entry(b, idx), rel=1e-12, abs=1e-12)

    def test_iqp_non_square(self):
        with pytest.raises(ShapeError):
            encode_iqp(np.ones((2, 3)), LatticeSpec.uniform([0, 1], 2))


class TestIlp:
    def test_unconstrained_is_separable(self):
        c = np.array([1.0, -2.0, 0.5])
        inst = IlpInstance(np.zeros((0, 3)), np.zeros(0), c, LatticeSpec.uniform([0, 1, 2], 3))
        model = encode_ilp(inst)
        assert model.rank == 1
        best = brute_force_extreme(model)
        assert best.indices == (0, 2, 0)
        assert best.value == pytest.approx(np.exp(-4.0))

    def test_explicit_parameters_match_formula(self, rng):
        H = rng.integers(-2, 3, (2, 3)).astype(float)
        b = rng.integers(0, 3, 2).astype(float)
        c = rng.standard_normal(3)
        inst = IlpInstance(H, b, c, LatticeSpec.uniform([0, 1], 3), rho=1.0, t=1.0)
        model = encode_ilp(inst)
        assert model.rank == 3
        for idx in _all_tuples(model):
            x = np.array(idx, dtype=float)
            expected = np.exp(c @ x) + np.sum(np.exp(-b) * np.exp((c[None, :] + H) @ x))
            assert evaluate_entry(model, idx) == pytest.approx(expected, rel=1e-8)

    def test_overflow(self):
        c = np.array([50.0, 50.0])
        inst = IlpInstance(np.ones((1, 2)), np.zeros(1), c, LatticeSpec.uniform([0, 5], 2), t=10.0)
        with pytest.raises(EncodingOverflowError):
            encode_ilp(inst)

    def test_limit_applies_per_factor_entry(self):
        # each factor reaches exp(400); their product would not fit a double
        c = np.array([80.0, 80.0])
        inst = IlpInstance(np.zeros((0, 2)), np.zeros(0), c, LatticeSpec.uniform([0, 5], 2), t=1.0)
        model = encode_ilp(inst)
        assert all(np.all(np.isfinite(f)) for f in model.factors)
        assert model.factors[0][1, 0] == pytest.approx(np.exp(400.0))

    def test_default_t_keeps_exponents_bounded(self, rng):
        lattice = LatticeSpec.uniform(range(10), 4)
        inst = IlpInstance(rng.integers(-5, 6, (3, 4)), rng.integers(0, 5, 3), 20 * rng.standard_normal(4), lattice)
        model = encode_ilp(inst)
        assert all(np.all(np.isfinite(f)) for f in model.factors)
        assert np.log(np.max([np.abs(f).max() for f in model.factors])) <= 500.0 + 1e-9


class TestSignRetrieval:
    @pytest.fixture
    def noiseless(self, rng):
        A = rng.standard_normal((8, 3))
        x = rng.standard_normal(3)
        return SignRetrievalInstance(A, np.abs(A @ x)), x, np.where(A @ x >= 0, 0, 1)

    def test_true_signs_reach_zero(self, noiseless):
        inst, x, signs = noiseless
        model = encode_sign_retrieval(inst)
        assert evaluate_entry(model, tuple(signs)) == pytest.approx(0.0, abs=1e-9)
        best = brute_force_extreme(model)
        assert best.value == pytest.approx(0.0, abs=1e-9)
        assert best.indices in (tuple(signs), tuple(1 - signs))
        recovered = recover_sign_retrieval_x(inst, best.indices)
        assert min(np.linalg.norm(recovered - x), np.linalg.norm(recovered + x)) < 1e-9

    def test_global_flip_symmetry(self, noiseless, rng):
        model = encode_sign_retrieval(noiseless[0])
        for idx in _random_tuples(rng, model.dims, 30):
            flipped = tuple(1 - i for i in idx)
            assert evaluate_entry(model, idx) == pytest.approx(evaluate_entry(model, flipped), rel=1e-12, abs=1e-12)

    def test_rank(self, rng):
        A = rng.standard_normal((4, 2))
        assert encode_sign_retrieval(SignRetrievalInstance(A, np.abs(A @ np.ones(2)))).rank == 6

    def test_rank_deficient_sensing(self):
        A = np.array([[1.0, 2.0], [2.0, 4.0], [3.0, 6.0], [1.0, 2.0]])
        with pytest.raises(SingularSystemError, match="condition"):
            encode_sign_retrieval(SignRetrievalInstance(A, np.ones(4)))

    def test_needs_more_measurements(self):
        with pytest.raises(ShapeError):
            SignRetrievalInstance(np.eye(3), np.ones(3))


class TestParity:
    def test_all_zero_received(self, rng):
        C = rng.integers(0, 2, (4, 6))
        model = encode_parity_bsc(ParityInstance(C, np.zeros(6)))
        assert model.rank == 5
        assert evaluate_entry(model, (0,) * 6) == pytest.approx(-4 + np.exp(-1.0))
        assert brute_force_extreme(model).indices == (0,) * 6

    def test_toy_code(self, toy_check_matrix):
        model = encode_parity_bsc(ParityInstance(toy_check_matrix, np.array([0, 0, 1])))
        best = brute_force_extreme(model)
        assert best.indices == (0, 0, 0)
        assert best.value == pytest.approx(-2 + (4 / 3) / np.e)

    def test_bsc_needs_binary_word(self, toy_check_matrix):
        with pytest.raises(InvalidArgumentError):
            ParityInstance(toy_check_matrix, np.array([0.0, 0.5, 1.0]))

    @pytest.mark.parametrize("seed", range(50))
    def test_awgn_on_binary_word_agrees_with_bsc(self, seed):
        rng = np.random.default_rng(seed)
        N = int(rng.integers(4, 11))
        C = rng.integers(0, 2, (N // 2, N))
        y = rng.integers(0, 2, N)
        bsc = brute_force_extreme(encode_parity_bsc(ParityInstance(C, y))).indices
        awgn = brute_force_extreme(encode_parity_awgn(ParityInstance(C, y, "awgn"))).indices
        assert is_codeword(C, bsc) and is_codeword(C, awgn)
        assert np.sum(np.array(bsc) != y) == np.sum(np.array(awgn) != y)

    def test_awgn_picks_nearest_codeword(self, toy_check_matrix):
        y = np.array([0.9, 0.1, 0.8])
        model = encode_parity_awgn(ParityInstance(toy_check_matrix, y, "awgn"))
        assert brute_force_extreme(model).indices == (1, 1, 1)

    def test_awgn_distance_term_below_one_at_rounded_word(self):
        y = np.array([0.9, 0.1, 0.8, 0.45])
        rounded = np.round(y)
        term = (1 + 1 / y.size) ** np.sum((y - rounded) ** 2) / awgn_scale(y)
        assert term < 1.0

    def test_awgn_instance_through_encode(self, toy_check_matrix):
        inst = ParityInstance(toy_check_matrix, np.array([0.2, 0.7, 0.4]), "awgn")
        np.testing.assert_array_equal(encode(inst).factors[0], encode_parity_awgn(inst).factors[0])


class TestGfL:
    def test_binary_field_matches_bsc(self, toy_check_matrix):
        y = np.array([0, 1, 1])
        gf = encode_gf_l(GfLInstance(toy_check_matrix, np.zeros(2), y, L=2), scale=np.e)
        bsc = encode_parity_bsc(ParityInstance(toy_check_matrix, y))
        assert gf.is_complex
        for idx in _all_tuples(bsc):
            assert evaluate_entry(gf, idx) == pytest.approx(evaluate_entry(bsc, idx), rel=1e-12, abs=1e-12)

    def test_quaternary_minimum_solves_the_congruence(self):
        inst = GfLInstance(np.array([[1, 2]]), np.array([3]), np.array([0.0, 0.0]), L=4)
        model = encode_gf_l(inst)
        assert model.rank == 2
        best = brute_force_extreme(model)
        assert (best.indices[0] + 2 * best.indices[1]) % 4 == 3
        assert best.indices == (1, 1)

    def test_l_must_be_power_of_two(self):
        with pytest.raises(InvalidArgumentError):
            GfLInstance(np.array([[1, 2]]), np.array([0]), np.zeros(2), L=3)


class TestOverdetermined:
    def test_consistent_system(self, rng):
        G = rng.integers(0, 2, (7, 3))
        x0 = np.array([1, 0, 1])
        model = encode_overdet_gf2(G, (G @ x0) % 2)
        assert model.rank == 7
        assert evaluate_entry(model, tuple(x0)) == -7.0
        assert brute_force_extreme(model).value == -7.0

    def test_one_violation(self):
        model = encode_overdet_gf2(np.array([[1], [1], [1]]), np.array([0, 0, 1]))
        best = brute_force_extreme(model)
        assert best.indices == (0,)
        assert best.value == -1.0


class TestInstanceFiles:
    def test_partition(self):
        inst = parse_instance('{"problem": "partition", "weights": [1, 2, 3]}')
        assert isinstance(inst, PartitionInstance)
        np.testing.assert_array_equal(inst.weights, [1.0, 2.0, 3.0])

    def test_per_mode_lattice(self):
        inst = parse_instance('{"problem": "iqp", "Q": [[1, 0], [0, 1]], "lattice": [[0, 1], [0, 1, 2]]}')
        assert inst.lattice.dims == (2, 3)

    def test_parity_from_alist(self, tmp_path, toy_check_matrix):
        write_alist(toy_check_matrix, tmp_path / "toy.alist")
        text = f'{{"problem": "parity", "alist": "{tmp_path / "toy.alist"}", "received": [0, 0, 1]}}'
        inst = parse_instance(text)
        np.testing.assert_array_equal(inst.check_matrix, toy_check_matrix)

    def test_unknown_problem(self):
        with pytest.raises(FileFormatError):
            parse_instance('{"problem": "knapsack", "weights": [1]}')

    def test_missing_field(self):
        with pytest.raises(FileFormatError, match="weights"):
            parse_instance('{"problem": "partition"}')
