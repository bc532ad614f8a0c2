import numpy as np
import pytest

from mincpd.core.solver import discrete_gaussian, project_simplex, random_distributions, softmax_gradient
from mincpd.errors import InvalidArgumentError


class TestProjectSimplex:
    def test_distribution_is_fixed_point(self, rng):
        p = rng.dirichlet(np.ones(6))
        np.testing.assert_allclose(project_simplex(p), p, atol=1e-15)

    @pytest.mark.parametrize(
        "v, expected",
        [
            ([0.5, 0.5, -1.0], [0.5, 0.5, 0.0]),
            ([2.0, 1.0], [1.0, 0.0]),
            ([0.0, 0.0, 0.0, 0.0], [0.25, 0.25, 0.25, 0.25]),
        ],
    )
    def test_by_hand(self, v, expected):
        np.testing.assert_allclose(project_simplex(np.array(v)), expected, atol=1e-15)

    def test_output_is_feasible_and_closest(self, rng):
        for _ in range(100):
            v = 3.0 * rng.standard_normal(5)
            p = project_simplex(v)
            assert np.all(p >= 0)
            assert p.sum() == pytest.approx(1.0, abs=1e-12)
            # no vertex is closer than the projection
            for vertex in np.eye(5):
                assert np.sum((v - p) ** 2) <= np.sum((v - vertex) ** 2) + 1e-12

    @pytest.mark.parametrize(
        "v, expected",
        [
            ([1e17, 0.0], [1.0, 0.0]),
            ([1e16, 3.0, -2.0], [1.0, 0.0, 0.0]),
            ([-5.0, 1e300], [0.0, 1.0]),
        ],
    )
    def test_huge_entries_land_on_a_vertex(self, v, expected):
        np.testing.assert_array_equal(project_simplex(np.array(v)), expected)

    def test_invalid_input(self):
        with pytest.raises(InvalidArgumentError):
            project_simplex(np.array([]))
        with pytest.raises(InvalidArgumentError):
            project_simplex(np.array([1.0, np.inf]))


class TestSoftmaxGradient:
    def test_sums_to_zero(self, rng):
        p = rng.dirichlet(np.ones(7))
        g = rng.standard_normal(7)
        assert softmax_gradient(p, g).sum() == pytest.approx(0.0, abs=1e-14)

    def test_constant_gradient_is_stationary(self):
        p = np.full(4, 0.25)
        np.testing.assert_allclose(softmax_gradient(p, np.full(4, 3.0)), 0.0, atol=1e-15)


def test_random_distributions_have_full_support(rng):
    for p in random_distributions((2, 5, 3), rng):
        assert np.all(p > 0)
        assert p.sum() == pytest.approx(1.0)


class TestDiscreteGaussian:
    def test_midpoint_of_two(self):
        np.testing.assert_allclose(discrete_gaussian(1.5, 0.7, 2), [0.5, 0.5])

    def test_peaks_at_nearest_position(self):
        p = discrete_gaussian(3.2, 0.5, 5)
        assert int(np.argmax(p)) == 2

    def test_mu_outside_the_range(self):
        p = discrete_gaussian(-4.0, 0.5, 3)
        assert int(np.argmax(p)) == 0
        assert np.all(np.isfinite(p))
