# coding: utf8

"""
Maximization of binding information and multi-information over the simplex of
joint tables, by mirror ascent (exponentiated gradient) with backtracking and
random restarts.
"""
import logging
import math
from dataclasses import dataclass, field
from multiprocessing.pool import ThreadPool
from typing import List, Optional

import numpy as np
from scipy.special import xlogy

from ..measures.measures import conditional_entropy
from ..tools.data.joint import JointTable, Shape, SubsetMask, make_joint, marginalize
from ..tools.exceptions import StateSpaceTooLarge
from .utils import EarlyStopping, local_norm, restart_seeds

MAX_OPTIMIZATION_STATES = 2 ** 14
PROBABILITY_FLOOR = 1e-12
MIN_STEP = 1e-12
CAP_TOLERANCE = 1e-4
OBJECTIVES = ["binding", "multi"]


@dataclass
class MaximizerConfig:
    restarts: int = 20
    max_iters: int = 2000
    tol: float = 1e-6
    seed: int = 0
    step_size: float = 1.0
    max_step_size: float = 1e4
    patience: int = 100
    min_delta: float = 1e-12
    n_threads: int = 1
    log_dir: Optional[str] = None


def _raw_entropy(q) -> float:
    """-sum q ln q in nats, on vectors that need not sum to 1."""
    return float(-np.sum(xlogy(q, q)))


def _tensor(p, shape: Shape):
    return np.asarray(p, dtype=np.float64).reshape(shape.tensor_shape, order="F")


def binding_value(p, shape: Shape) -> float:
    """
    sum_i H(p without i) - (N-1) H(p) in bits, with the entropy extended to
    unnormalized nonnegative vectors; equals B on probability tables.
    """
    tensor = _tensor(p, shape)
    n = shape.n_vars
    value = sum(_raw_entropy(tensor.sum(axis=i)) for i in range(n)) - (n - 1) * _raw_entropy(tensor)
    return value / math.log(2)


def multi_value(p, shape: Shape) -> float:
    """sum_i H(p_i) - H(p) in bits, extended to unnormalized vectors like binding_value."""
    tensor = _tensor(p, shape)
    n = shape.n_vars
    singles = 0.0
    for i in range(n):
        others = tuple(a for a in range(n) if a != i)
        singles += _raw_entropy(tensor.sum(axis=others))
    return (singles - _raw_entropy(tensor)) / math.log(2)


def _floored(p):
    return np.maximum(np.asarray(p, dtype=np.float64), PROBABILITY_FLOOR)


def _binding_gradient(p, shape: Shape):
    n = shape.n_vars
    tensor = _tensor(_floored(p), shape)
    gradient = (n - 1) * (1 + np.log(tensor))
    for i in range(n):
        gradient = gradient - (1 + np.log(tensor.sum(axis=i, keepdims=True)))
    return gradient.ravel(order="F") / math.log(2)


def _multi_gradient(p, shape: Shape):
    n = shape.n_vars
    tensor = _tensor(_floored(p), shape)
    gradient = 1 + np.log(tensor)
    for i in range(n):
        others = tuple(a for a in range(n) if a != i)
        gradient = gradient - (1 + np.log(tensor.sum(axis=others, keepdims=True)))
    return gradient.ravel(order="F") / math.log(2)


def binding_gradient(joint: JointTable) -> np.ndarray:
    """
    Gradient of the binding information with respect to each probability.

    Component x is (N-1)(1 + ln p(x)) - sum_i (1 + ln p_(-i)(x_(-i))), where
    p_(-i) is the marginal dropping variable i, divided by ln 2 (bits).
    Probabilities are floored at 1e-12 before taking logarithms.
    """
    return _binding_gradient(joint.probs, joint.shape)


def multi_gradient(joint: JointTable) -> np.ndarray:
    """Gradient of the multi-information, (1 + ln p(x)) - sum_i (1 + ln p_i(x_i)) over ln 2."""
    return _multi_gradient(joint.probs, joint.shape)


def objective_cap(objective, n, k) -> float:
    """(N-1) log2 K, the largest value of both objectives."""
    return (n - 1) * math.log2(k)


@dataclass
class RestartResult:
    index: int
    value: float
    probs: np.ndarray
    iterations: int
    converged: bool
    stationarity: float
    history: List[float] = field(default_factory=list)


def _ascend(index, rng, shape, objective, config: MaximizerConfig, cap) -> RestartResult:
    value_fn, gradient_fn = ((binding_value, _binding_gradient) if objective == "binding"
                             else (multi_value, _multi_gradient))

    p = rng.exponential(1.0, size=shape.state_count)
    p = p / p.sum()
    value = value_fn(p, shape)
    history = [value]
    step = config.step_size
    stopper = EarlyStopping('max', min_delta=config.min_delta, patience=config.patience)
    converged = False
    stationarity = math.inf
    iterations = 0

    while True:
        gradient = gradient_fn(p, shape)
        stationarity = local_norm(p, gradient)
        if stationarity < config.tol or cap - value < CAP_TOLERANCE:
            converged = True
            break
        if iterations >= config.max_iters:
            break

        log_p = np.log(_floored(p))
        accepted = False
        while step >= MIN_STEP:
            logits = log_p + step * gradient
            candidate = np.exp(logits - logits.max())
            candidate = candidate / candidate.sum()
            candidate = np.maximum(candidate, PROBABILITY_FLOOR)
            candidate = candidate / candidate.sum()
            candidate_value = value_fn(candidate, shape)
            if candidate_value > value:
                accepted = True
                break
            step /= 2
        if not accepted:
            break

        p, value = candidate, candidate_value
        iterations += 1
        history.append(value)
        step = min(2 * step, config.max_step_size)
        if stopper.step(value):
            break

    return RestartResult(index, value, p, iterations, converged, stationarity, history)


@dataclass
class OptimizationResult:
    objective: str
    best_value: float
    best_table: JointTable
    iterations: int
    restarts_used: int
    converged: bool
    best_restart: int = 0
    stationarity: float = math.nan
    restart_values: List[float] = field(default_factory=list)
    value_histories: List[List[float]] = field(default_factory=list)

    def to_dict(self):
        return {
            "objective": self.objective,
            "n_vars": self.best_table.n_vars,
            "alphabet_size": self.best_table.alphabet_size,
            "best_value": self.best_value,
            "cap": objective_cap(self.objective, self.best_table.n_vars, self.best_table.alphabet_size),
            "iterations": self.iterations,
            "restarts_used": self.restarts_used,
            "best_restart": self.best_restart,
            "converged": self.converged,
            "stationarity": self.stationarity,
            "restart_values": list(self.restart_values),
        }

    def to_frame(self):
        import pandas as pd

        summary = self.to_dict()
        summary.pop("restart_values")
        return pd.DataFrame([summary])


def maximize(objective, n, k, config: MaximizerConfig = None, logger=None) -> OptimizationResult:
    """
    Maximizes binding information or multi-information over tables of N variables on K symbols.

    Args:
        objective: (str) 'binding' or 'multi'.
        n: (int) number of variables.
        k: (int) alphabet size.
        config: (MaximizerConfig) restarts, iterations, tolerance, seed and step size.
        logger: (logging.Logger) logger, module logger if None.

    Returns:
        (OptimizationResult) best restart by value, then fewest iterations, then
        lowest restart index.

    Raises:
        StateSpaceTooLarge: K^N > 2^14.
    """
    if logger is None:
        logger = logging.getLogger(__name__)
    if config is None:
        config = MaximizerConfig()
    if objective not in OBJECTIVES:
        raise ValueError("Objective %s must be in %s." % (objective, OBJECTIVES))
    shape = Shape(n, k)
    if shape.state_count > MAX_OPTIMIZATION_STATES:
        raise StateSpaceTooLarge("K^N = %i exceeds the optimization limit of 2^14 states." % shape.state_count)
    if config.restarts < 1:
        raise ValueError("At least one restart is needed, got %s." % config.restarts)

    cap = objective_cap(objective, n, k)
    generators = restart_seeds(config.seed, config.restarts)

    def run(index):
        return _ascend(index, generators[index], shape, objective, config, cap)

    if config.n_threads > 1:
        with ThreadPool(config.n_threads) as pool:
            results = pool.map(run, range(config.restarts))
    else:
        results = [run(index) for index in range(config.restarts)]

    for result in results:
        logger.debug("Restart %i: %s = %.12g bits after %i iterations (converged: %s)"
                     % (result.index, objective, result.value, result.iterations, result.converged))

    if config.log_dir is not None:
        from tensorboardX import SummaryWriter

        writer = SummaryWriter(config.log_dir)
        for result in results:
            for iteration, value in enumerate(result.history):
                writer.add_scalar("restart_%i/%s" % (result.index, objective), value, iteration)
        writer.close()

    best = sorted(results, key=lambda r: (-r.value, r.iterations, r.index))[0]
    table = make_joint(shape, best.probs)
    logger.info("Best %s information %.12g bits (cap %.12g) from restart %i"
                % (objective, best.value, cap, best.index))

    return OptimizationResult(
        objective=objective,
        best_value=float(best.value),
        best_table=table,
        iterations=best.iterations,
        restarts_used=len(results),
        converged=best.converged,
        best_restart=best.index,
        stationarity=best.stationarity,
        restart_values=[r.value for r in results],
        value_histories=[r.history for r in results],
    )


@dataclass
class OptimumDiagnosis:
    pseudo_independent: bool
    residuals_zero: bool
    giant_bit_like: bool
    max_marginal_distance: float
    max_residual: float

    def to_dict(self):
        return {
            "pseudo_independent": self.pseudo_independent,
            "residuals_zero": self.residuals_zero,
            "giant_bit_like": self.giant_bit_like,
            "max_marginal_distance": self.max_marginal_distance,
            "max_residual": self.max_residual,
        }


def classify_optimum(table: JointTable, tol=0.02) -> OptimumDiagnosis:
    """
    Describes the structure of an optimum.

    pseudo_independent: every (N-1)-variable marginal is within total variation
    tol of uniform. residuals_zero: every H(X_i | rest) is below tol bits.
    giant_bit_like: binary table with all but tol of its mass on two
    complementary configurations.
    """
    n = table.n_vars
    full = SubsetMask.full(n)
    distances = []
    residuals = []
    for i in range(1, n + 1):
        single = SubsetMask.from_indices([i])
        rest = full - single
        if rest:
            marginal = marginalize(table, rest).probs
            distances.append(0.5 * float(np.abs(marginal - 1.0 / marginal.size).sum()))
        residuals.append(conditional_entropy(table, single, rest))

    giant_bit_like = False
    if table.alphabet_size == 2:
        top = np.argsort(table.probs)[::-1][:2]
        complementary = int(top[0]) ^ int(top[1]) == table.shape.state_count - 1
        giant_bit_like = bool(complementary and table.probs[top].sum() >= 1 - tol)

    max_distance = max(distances) if distances else 0.0
    max_residual = max(residuals)
    return OptimumDiagnosis(
        pseudo_independent=bool(max_distance <= tol),
        residuals_zero=bool(max_residual < tol),
        giant_bit_like=giant_bit_like,
        max_marginal_distance=max_distance,
        max_residual=max_residual,
    )
