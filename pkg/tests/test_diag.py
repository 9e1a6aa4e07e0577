import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wnnm import (
    ConvergenceError,
    InvalidInputError,
    PreconditionError,
    SolverPath,
    brute_force_oracle,
    closed_form,
    objective_diag,
    pava_solve,
    projgrad_reference,
)


def random_instance(rng, n_max=10):
    n = int(rng.integers(1, n_max + 1))
    sigma = np.sort(rng.uniform(0.0, 3.0, size=n))[::-1].copy()
    w = rng.uniform(0.0, 3.0, size=n)
    return sigma, w


def feasible(d):
    return np.all(np.diff(d) <= 0.0) and np.all(d >= 0.0)


class TestObjective:
    def test_exact_fit_zero_weights(self):
        assert objective_diag([3, 1], [3, 1], [0, 0]) == 0.0

    def test_hand_values(self):
        assert objective_diag([0, 0], [3, 1], [1, 1]) == pytest.approx(10.0)
        assert objective_diag([2.5], [3], [1]) == pytest.approx(2.75)

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            objective_diag([1, 2], [1], [1])


class TestClosedForm:
    def test_hand_values(self):
        np.testing.assert_allclose(closed_form([3, 2, 1], [1, 1, 1]).d, [2.5, 1.5, 0.5])
        np.testing.assert_allclose(closed_form([1, 0.5], [2, 3]).d, [0.0, 0.0])
        np.testing.assert_allclose(closed_form([5, 1], [0, 4]).d, [5.0, 0.0])

    def test_rejects_descending_weights(self):
        with pytest.raises(PreconditionError, match="pava_solve"):
            closed_form([3, 2], [2, 1])

    def test_path_tag(self):
        assert closed_form([1], [1]).path is SolverPath.CLOSED_FORM


class TestPava:
    def test_no_violation_just_clamps(self):
        sol = pava_solve([3, 1], [1, 3])
        np.testing.assert_allclose(sol.d, [2.5, 0.0])

    def test_pooling(self):
        sol = pava_solve([3, 2], [4, 0])
        np.testing.assert_allclose(sol.d, [1.5, 1.5])

    def test_zero_spectrum(self):
        np.testing.assert_allclose(pava_solve([0, 0], [5, 1]).d, [0.0, 0.0])

    def test_negative_weight_rejected(self):
        with pytest.raises(InvalidInputError):
            pava_solve([1.0], [-0.1])

    def test_empty_instance(self):
        sol = pava_solve([], [])
        assert sol.d.size == 0 and sol.objective == 0.0

    def test_all_zero_weights_is_identity(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            sigma, _ = random_instance(rng)
            np.testing.assert_array_equal(pava_solve(sigma, np.zeros_like(sigma)).d, sigma)

    def test_feasibility_exact(self):
        rng = np.random.default_rng(2)
        for _ in range(500):
            sigma, w = random_instance(rng)
            assert feasible(pava_solve(sigma, w).d)

    def test_objective_matches_recomputation(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            sigma, w = random_instance(rng)
            sol = pava_solve(sigma, w)
            assert abs(sol.objective - objective_diag(sol.d, sigma, w)) <= 1e-12

    def test_agrees_with_closed_form_when_applicable(self):
        rng = np.random.default_rng(4)
        for _ in range(500):
            n = int(rng.integers(1, 11))
            sigma = np.sort(rng.uniform(0, 3, n))[::-1].copy()
            w = np.sort(rng.uniform(0, 3, n))
            np.testing.assert_allclose(pava_solve(sigma, w).d, closed_form(sigma, w).d, atol=1e-10)

    def test_dominates_random_feasible_candidates(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            sigma, w = random_instance(rng)
            best = pava_solve(sigma, w).objective
            cand = np.sort(rng.uniform(0, sigma[0] + 1, size=(1000, sigma.size)), axis=1)[:, ::-1]
            vals = np.sum((cand - sigma) ** 2 + w * cand, axis=1)
            assert best <= vals.min() + 1e-9

    def test_weight_shift_never_increases_solution(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            sigma, w = random_instance(rng)
            c = float(rng.uniform(0.01, 2.0))
            assert np.all(pava_solve(sigma, w + c).d <= pava_solve(sigma, w).d + 1e-10)


class TestProjGrad:
    def test_agrees_with_pava(self):
        for sigma, w in [([3, 2], [4, 0]), ([3, 1], [1, 3])]:
            a = projgrad_reference(sigma, w, tol=1e-12, max_iter=100000)
            b = pava_solve(sigma, w)
            np.testing.assert_allclose(a.d, b.d, atol=1e-6)
            assert a.path is SolverPath.PROJ_GRAD

    def test_unconstrained_minimum_already_feasible(self):
        np.testing.assert_allclose(projgrad_reference([1], [0], tol=1e-12).d, [1.0], atol=1e-10)

    def test_exhaustion_raises_with_last_iterate(self):
        with pytest.raises(ConvergenceError) as exc_info:
            projgrad_reference([3, 2], [4, 0], tol=1e-15, max_iter=2)
        err = exc_info.value
        assert err.last_iterate.shape == (2,)
        assert err.iterations == 2
        assert np.isfinite(err.objective)

    def test_bad_arguments(self):
        with pytest.raises(InvalidInputError):
            projgrad_reference([1], [1], tol=0.0)
        with pytest.raises(InvalidInputError):
            projgrad_reference([1], [1], max_iter=0)

    def test_random_cross_agreement(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            sigma, w = random_instance(rng)
            a = pava_solve(sigma, w).objective
            b = projgrad_reference(sigma, w, tol=1e-12, max_iter=100000).objective
            assert abs(a - b) <= 1e-6


class TestOracle:
    def test_hand_values(self):
        np.testing.assert_allclose(brute_force_oracle([3, 2], [4, 0], 0.01).d, [1.5, 1.5])
        np.testing.assert_allclose(brute_force_oracle([0], [1], 0.01).d, [0.0])
        np.testing.assert_allclose(brute_force_oracle([3, 1], [1, 3], 0.01).d, [2.5, 0.0])

    def test_refuses_large_instances(self):
        with pytest.raises(InvalidInputError):
            brute_force_oracle([5, 4, 3, 2, 1], [1, 1, 1, 1, 1], 0.1)

    def test_result_is_feasible(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            sigma, w = random_instance(rng, n_max=4)
            assert feasible(brute_force_oracle(sigma, w, 0.05).d)

    def test_pava_never_beaten_by_grid(self):
        rng = np.random.default_rng(9)
        for _ in range(200):
            sigma, w = random_instance(rng, n_max=3)
            fast = pava_solve(sigma, w).objective
            slow = brute_force_oracle(sigma, w, 1e-3).objective
            assert fast <= slow + 1e-4


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0.0, 5.0), min_size=1, max_size=8), st.data())
def test_pava_feasible_and_dominant_property(raw_sigma, data):
    sigma = np.sort(np.array(raw_sigma))[::-1].copy()
    w = np.array(data.draw(st.lists(st.floats(0.0, 5.0), min_size=sigma.size, max_size=sigma.size)))
    sol = pava_solve(sigma, w)
    assert feasible(sol.d)
    # projecting the optimum back onto the cone changes nothing
    resolved = pava_solve(np.maximum.accumulate(sol.d[::-1])[::-1], np.zeros_like(w))
    np.testing.assert_allclose(resolved.d, sol.d, atol=1e-12)
