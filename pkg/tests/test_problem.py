import numpy as np
import pytest

from hillvallea.benchmarks import get_problem
from hillvallea.problem import (BudgetedEvaluator, BudgetExhausted,
                                DimensionMismatch, uniform_init)

from conftest import sphere, synthetic_spec


def test_equal_maxima_peak_is_minus_one_internally():
    e = BudgetedEvaluator(get_problem(2))
    sol = e.evaluate(np.array([0.1]))
    assert sol.f == pytest.approx(-1.0, abs=1e-12)
    assert e.used == 1


@pytest.mark.parametrize("pid", range(1, 11))
def test_known_optima_match_declared_fitness(pid):
    spec = get_problem(pid)
    e = BudgetedEvaluator(spec)
    for opt in spec.known_optima:
        sol = e.evaluate(opt)
        assert abs(sol.f - spec.internal_optimum_fitness) < 1e-10


def test_budget_exhausted_at_limit():
    spec = synthetic_spec(sphere, [-1.0], [1.0], [[0.0]], budget=2)
    e = BudgetedEvaluator(spec)
    e.evaluate(np.array([0.5]))
    e.evaluate(np.array([0.5]))
    with pytest.raises(BudgetExhausted):
        e.evaluate(np.array([0.5]))
    assert e.used == 2


def test_dimension_mismatch():
    e = BudgetedEvaluator(get_problem(4))
    with pytest.raises(DimensionMismatch):
        e.evaluate(np.array([1.0]))


def test_batch_partial_on_exhaustion():
    spec = synthetic_spec(sphere, [-1.0], [1.0], [[0.0]], budget=3)
    e = BudgetedEvaluator(spec)
    with pytest.raises(BudgetExhausted) as exc_info:
        e.evaluate_batch(np.zeros((5, 1)))
    assert len(exc_info.value.partial) == 3
    assert e.used == 3


def test_uniform_init_counts_and_bounds():
    spec = get_problem(4)
    e = BudgetedEvaluator(spec)
    sols = uniform_init(e, 128, np.random.default_rng(3))
    assert len(sols) == 128
    assert e.used == 128
    for s in sols:
        assert np.all(s.x >= spec.lower) and np.all(s.x <= spec.upper)


def test_uniform_init_deterministic():
    spec = get_problem(4)
    a = uniform_init(BudgetedEvaluator(spec), 16, np.random.default_rng(7))
    b = uniform_init(BudgetedEvaluator(spec), 16, np.random.default_rng(7))
    assert all(np.array_equal(x.x, y.x) and x.f == y.f for x, y in zip(a, b))


def test_single_sample_in_bounds():
    spec = synthetic_spec(sphere, [-1.0], [1.0], [[0.0]], budget=10)
    sols = uniform_init(BudgetedEvaluator(spec), 1, np.random.default_rng(0))
    assert len(sols) == 1
    assert -1.0 <= sols[0].x[0] <= 1.0


def test_reevaluation_is_bitwise_identical():
    spec = get_problem(6)
    e = BudgetedEvaluator(spec)
    x = np.array([1.234567, -5.4321])
    assert e.evaluate(x).f == e.evaluate(x).f


def test_clamp_repairs_out_of_bounds():
    spec = get_problem(5)
    repaired = spec.clamp(np.array([[5.0, -9.0]]))
    assert np.allclose(repaired, [[1.9, -1.1]])
