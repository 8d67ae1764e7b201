# coding: utf8

import math
import os

import numpy as np
import pytest

from infostruct.maximize import (EarlyStopping, MaximizerConfig, binding_gradient, binding_value, classify_optimum,
                                 maximize, multi_gradient, multi_value, objective_cap)
from infostruct.maximize.maximizer import PROBABILITY_FLOOR
from infostruct.maximize.utils import local_norm
from infostruct.measures import binding_information, multi_information
from infostruct.tools.data import (Shape, giant_bit_process, independent_uniform, make_joint, modulo_process,
                                   random_simplex)
from infostruct.tools.exceptions import StateSpaceTooLarge


def finite_difference(value_fn, p, shape, step=1e-6):
    gradient = np.zeros_like(p)
    for x in range(p.size):
        up, down = p.copy(), p.copy()
        up[x] += step
        down[x] -= step
        gradient[x] = (value_fn(up, shape) - value_fn(down, shape)) / (2 * step)
    return gradient


def test_values_match_measures():
    joint = random_simplex(3, 3, seed=2)
    assert binding_value(joint.probs, joint.shape) == pytest.approx(binding_information(joint), abs=1e-9)
    assert multi_value(joint.probs, joint.shape) == pytest.approx(multi_information(joint), abs=1e-9)


@pytest.mark.parametrize("n, k, seed", [(2, 2, 0), (3, 2, 1), (3, 3, 2), (4, 2, 3)])
def test_gradients(n, k, seed):
    joint = random_simplex(n, k, seed)
    # keep away from the boundary where the logarithms are steep
    p = 0.5 * joint.probs + 0.5 / joint.probs.size
    table = make_joint(Shape(n, k), p)
    assert np.allclose(binding_gradient(table), finite_difference(binding_value, p, table.shape), atol=1e-5)
    assert np.allclose(multi_gradient(table), finite_difference(multi_value, p, table.shape), atol=1e-5)


@pytest.mark.parametrize("seed", range(50))
def test_gradients_at_random_interior_points(seed):
    rng = np.random.default_rng(500 + seed)
    n, k = int(rng.integers(2, 5)), int(rng.integers(2, 4))
    shape = Shape(n, k)
    weights = rng.exponential(1.0, size=shape.state_count)
    p = 0.5 * weights / weights.sum() + 0.5 / shape.state_count
    table = make_joint(shape, p)
    assert np.allclose(binding_gradient(table), finite_difference(binding_value, p, shape), atol=1e-5)
    assert np.allclose(multi_gradient(table), finite_difference(multi_value, p, shape), atol=1e-5)


def test_parity_is_stationary():
    parity = modulo_process(3, 2, 0)
    p = np.maximum(parity.probs, PROBABILITY_FLOOR)
    table = make_joint(parity.shape, p / p.sum())
    gradient = binding_gradient(table)
    support = parity.probs > 0
    assert np.ptp(gradient[support]) < 1e-9
    assert local_norm(table.probs, gradient) < 1e-3

    interior = random_simplex(3, 2, seed=0)
    assert local_norm(interior.probs, binding_gradient(interior)) > 1e-2

def test_gradient_symmetry():
    gradient = binding_gradient(independent_uniform(2, 2))
    assert np.allclose(gradient, gradient[0])


def test_objective_cap():
    assert objective_cap("binding", 3, 2) == pytest.approx(2.0)
    assert objective_cap("multi", 4, 3) == pytest.approx(3 * math.log2(3))


@pytest.mark.timeout(600)
@pytest.mark.parametrize("objective, n, k, threshold", [
    ("binding", 3, 2, 1.99),
    ("binding", 3, 3, 0.99 * 2 * math.log2(3)),
    ("multi", 4, 2, 2.97),
    pytest.param("binding", 4, 2, 0.99 * 3, marks=pytest.mark.slow),
])
def test_maximize_reaches_cap(objective, n, k, threshold):
    result = maximize(objective, n, k, MaximizerConfig(restarts=20, seed=0))
    assert result.best_value >= threshold
    assert result.best_value <= objective_cap(objective, n, k) + 1e-9
    assert result.restarts_used == 20
    assert len(result.restart_values) == 20
    assert result.best_value == max(result.restart_values)
    measured = binding_information(result.best_table) if objective == "binding" \
        else multi_information(result.best_table)
    assert measured == pytest.approx(result.best_value, abs=1e-6)


@pytest.mark.timeout(300)
@pytest.mark.parametrize("objective", ["binding", "multi"])
def test_histories_increase(objective):
    result = maximize(objective, 3, 2, MaximizerConfig(restarts=4, seed=1, max_iters=200))
    assert len(result.value_histories) == 4
    for history, value in zip(result.value_histories, result.restart_values):
        assert all(later >= earlier for earlier, later in zip(history, history[1:]))
        assert history[-1] == value


@pytest.mark.timeout(300)
def test_binding_optimum_is_pseudo_independent():
    result = maximize("binding", 3, 2, MaximizerConfig(restarts=20, seed=0))
    diagnosis = classify_optimum(result.best_table, tol=0.02)
    assert diagnosis.pseudo_independent
    assert diagnosis.residuals_zero


@pytest.mark.timeout(300)
def test_maximize_is_deterministic():
    config = MaximizerConfig(restarts=4, seed=3, max_iters=200)
    first = maximize("binding", 3, 2, config)
    second = maximize("binding", 3, 2, config)
    assert first.best_value == second.best_value
    assert first.best_table == second.best_table

    threaded = maximize("binding", 3, 2, MaximizerConfig(restarts=4, seed=3, max_iters=200, n_threads=2))
    assert threaded.restart_values == first.restart_values


def test_maximize_rejects():
    with pytest.raises(StateSpaceTooLarge):
        maximize("binding", 15, 2)
    with pytest.raises(ValueError):
        maximize("entropy", 3, 2)
    with pytest.raises(ValueError):
        maximize("binding", 3, 2, MaximizerConfig(restarts=0))


def test_maximize_tensorboard(tmp_path):
    log_dir = str(tmp_path / "runs")
    maximize("multi", 2, 2, MaximizerConfig(restarts=2, max_iters=20, log_dir=log_dir))
    assert len(os.listdir(log_dir)) > 0


def test_classify_optimum():
    parity = classify_optimum(modulo_process(3, 2, 0))
    assert parity.pseudo_independent and parity.residuals_zero
    assert not parity.giant_bit_like

    giant_bit = classify_optimum(giant_bit_process(3))
    assert not giant_bit.pseudo_independent
    assert giant_bit.giant_bit_like
    assert giant_bit.max_marginal_distance == pytest.approx(0.5)


def test_early_stopping():
    stopper = EarlyStopping('max', min_delta=0.1, patience=2)
    assert not stopper.step(1.0)
    assert not stopper.step(1.05)
    assert stopper.step(1.08)

    stopper = EarlyStopping('min', patience=1)
    assert not stopper.step(1.0)
    assert not stopper.step(0.5)
    assert stopper.step(0.5)
    with pytest.raises(ValueError):
        EarlyStopping('median')
