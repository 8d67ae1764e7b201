# coding: utf8

"""
Rates of stationary first-order Markov chains.

Asymptotic quantities (entropy rate, multi-information rate, residual entropy
rate, predictive information rate) have closed forms for first-order chains;
block quantities are also computed by brute force over the dense block table so
that both paths can be compared.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.stats import entropy as shannon_entropy

from ..measures.measures import clamp, entropy, multi_information
from ..tools.data.joint import MAX_STATES, JointTable, Shape, SubsetMask
from ..tools.exceptions import BlockTooLarge, InconsistentResult, NonUniqueStationary, NotStochastic

ROW_TOLERANCE = 1e-12
STATIONARY_TOLERANCE = 1e-10
IDENTITY_TOLERANCE = 1e-9
SAMPLE_CHUNK = 2 ** 16


@dataclass(frozen=True)
class MarkovModel:
    k: int
    transition: np.ndarray
    stationary: np.ndarray

    @property
    def marginal_entropy(self) -> float:
        return float(shannon_entropy(self.stationary, base=2))


def check_stochastic(transition) -> np.ndarray:
    transition = np.array(transition, dtype=np.float64)
    if transition.ndim != 2 or transition.shape[0] != transition.shape[1] or transition.shape[0] < 1:
        raise NotStochastic("The transition matrix must be square, got shape %s." % (transition.shape,))
    if not np.all(np.isfinite(transition)) or transition.min() < 0:
        raise NotStochastic("Transition probabilities must be finite and nonnegative.")
    row_sums = transition.sum(axis=1)
    worst = int(np.argmax(np.abs(row_sums - 1)))
    if abs(row_sums[worst] - 1) > ROW_TOLERANCE:
        raise NotStochastic("Row %i of the transition matrix sums to %.12g." % (worst, row_sums[worst]))
    return transition


def stationary_distribution(transition) -> np.ndarray:
    """
    Solves pi T = pi with sum(pi) = 1.

    Uniqueness is decided on the graph of positive transitions, so arbitrarily
    small probabilities still connect states. The distribution is then computed
    on the single closed class by Grassmann-Taksar-Heyman elimination, which
    involves no subtraction; transient states get probability 0.

    Args:
        transition: (array-like) K x K row-stochastic matrix, row = current symbol.

    Returns:
        (ndarray) the stationary distribution.

    Raises:
        NotStochastic: the matrix is not row-stochastic.
        NonUniqueStationary: the stationary distribution is not unique (reducible chain).
    """
    transition = check_stochastic(transition)
    closed = closed_classes(transition)
    if len(closed) != 1:
        raise NonUniqueStationary("The chain is reducible with %i closed classes: its stationary "
                                  "distribution is not unique." % len(closed))

    states = closed[0]
    pi = np.zeros(transition.shape[0])
    pi[states] = _gth(transition[np.ix_(states, states)])

    if np.max(np.abs(pi @ transition - pi)) > STATIONARY_TOLERANCE:
        raise InconsistentResult("The stationary distribution misses pi T = pi by more than %g."
                                 % STATIONARY_TOLERANCE)
    return pi


def closed_classes(transition) -> list:
    """Communicating classes that no positive transition leaves, as sorted index arrays."""
    from scipy.sparse.csgraph import connected_components

    support = np.asarray(transition) > 0
    n_classes, labels = connected_components(support, directed=True, connection="strong")
    closed = []
    for label in range(n_classes):
        members = np.flatnonzero(labels == label)
        outside = labels != label
        if not support[np.ix_(members, outside)].any():
            closed.append(members)
    return closed


def _gth(transition) -> np.ndarray:
    # transition is irreducible and row-stochastic
    a = np.array(transition, dtype=np.float64)
    k = a.shape[0]
    for n in range(k - 1, 0, -1):
        a[:n, n] /= a[n, :n].sum()
        a[:n, :n] += np.outer(a[:n, n], a[n, :n])
    pi = np.zeros(k)
    pi[0] = 1.0
    for n in range(1, k):
        pi[n] = pi[:n] @ a[:n, n]
    return pi / pi.sum()


def markov_model(transition) -> MarkovModel:
    transition = check_stochastic(transition)
    transition.setflags(write=False)
    pi = stationary_distribution(transition)
    pi.setflags(write=False)
    return MarkovModel(transition.shape[0], transition, pi)


def random_chain(k, seed=None, min_probability=1e-6) -> MarkovModel:
    """Chain whose rows are uniform on the K-simplex, redrawn while any entry is below min_probability."""
    rng = np.random.default_rng(seed)
    while True:
        rows = rng.exponential(1.0, size=(k, k))
        rows = rows / rows.sum(axis=1, keepdims=True)
        if rows.min() >= min_probability:
            return markov_model(rows)


def symmetric_chain(epsilon) -> MarkovModel:
    """Binary chain flipping its state with probability epsilon."""
    return markov_model([[1 - epsilon, epsilon], [epsilon, 1 - epsilon]])


def entropy_rate(model: MarkovModel) -> float:
    """h = sum_i pi_i H(T_i)."""
    row_entropies = np.array([shannon_entropy(row, base=2) for row in model.transition])
    return float(model.stationary @ row_entropies)


def block_joint(model: MarkovModel, n: int) -> JointTable:
    """Dense joint table of n consecutive symbols, pi(x1) T(x1, x2) ... T(x_{n-1}, x_n)."""
    if n < 1:
        raise ValueError("Block length must be positive, got %s." % n)
    if model.k ** n > MAX_STATES:
        raise BlockTooLarge("Blocks of length %i over %i symbols exceed the dense table limit." % (n, model.k))

    tensor = np.array(model.stationary)
    for _ in range(n - 1):
        tensor = tensor[..., None] * model.transition
    return JointTable(Shape(n, model.k), tensor.ravel(order="F").copy())


def block_entropy(model: MarkovModel, n: int, brute_force: bool = False) -> float:
    """
    Entropy H(n) of n consecutive symbols.

    The analytic path uses H(n) = H(1) + (n - 1) h, exact for first-order chains;
    the brute-force path enumerates the K^n blocks.
    """
    if brute_force:
        joint = block_joint(model, n)
        return entropy(joint, SubsetMask.full(n))
    if n < 1:
        raise ValueError("Block length must be positive, got %s." % n)
    return model.marginal_entropy + (n - 1) * entropy_rate(model)


def multi_information_rate(model: MarkovModel) -> float:
    return clamp(model.marginal_entropy - entropy_rate(model), "multi-information rate")


def block_mutual_information(model: MarkovModel, n: int, m: int) -> float:
    """I between a block of n symbols and the m symbols following it: H(n) + H(m) - H(n+m)."""
    value = (block_entropy(model, n, brute_force=True) + block_entropy(model, m, brute_force=True)
             - block_entropy(model, n + m, brute_force=True))
    return clamp(value, "block mutual information")


def excess_entropy_estimate(model: MarkovModel, n: int) -> float:
    """2 H(n) - H(2n), by brute force."""
    return block_mutual_information(model, n, n)


def predictive_information(model: MarkovModel, n: int, m_future: int = 1) -> float:
    """Information a block of n symbols carries about the next m_future symbols."""
    return block_mutual_information(model, n, m_future)


def entropy_rate_estimate(model: MarkovModel, n: int) -> float:
    """Finite-n entropy rate H(n) - H(n-1), with H(0) = 0."""
    if n == 1:
        return block_entropy(model, 1, brute_force=True)
    return block_entropy(model, n, brute_force=True) - block_entropy(model, n - 1, brute_force=True)


def excess_entropy_from_convergence(model: MarkovModel, n_max: int) -> float:
    """Sum over M = 1..n_max of the excess h(M) - h of the finite-M entropy rate."""
    h = entropy_rate(model)
    return clamp(sum(entropy_rate_estimate(model, m) - h for m in range(1, n_max + 1)), "excess entropy")


def residual_rate(model: MarkovModel) -> float:
    """
    H(X0 | X-1, X1) from the three-symbol joint pi(a) T(a, b) T(b, c).

    For first-order chains the nearest neighbours screen off the rest of the
    past and future, so this is the residual entropy rate.
    """
    joint = block_joint(model, 3)
    value = entropy(joint, SubsetMask.full(3)) - entropy(joint, SubsetMask.from_indices([1, 3]))
    return clamp(value, "residual entropy rate")


def pir_rate(model: MarkovModel) -> float:
    return clamp(entropy_rate(model) - residual_rate(model), "predictive information rate")


@dataclass
class RateReport:
    h_mu: float
    rho_mu: float
    r_mu: float
    b_mu: float
    marginal_entropy: float
    excess_entropy: float

    def to_dict(self):
        return {
            "entropy_rate": self.h_mu,
            "multi_information_rate": self.rho_mu,
            "residual_entropy_rate": self.r_mu,
            "predictive_information_rate": self.b_mu,
            "marginal_entropy": self.marginal_entropy,
            "excess_entropy": self.excess_entropy,
        }

    def to_frame(self):
        import pandas as pd

        return pd.DataFrame([self.to_dict()])


def rate_report(model: MarkovModel) -> RateReport:
    """
    All asymptotic rates of a chain.

    Raises InconsistentResult when b = h - r, rho = H(1) - h or
    H(1) = rho + r + b is off by more than 1e-9 bits.
    """
    h = entropy_rate(model)
    rho = multi_information_rate(model)
    r = residual_rate(model)
    b = pir_rate(model)
    marginal = model.marginal_entropy
    report = RateReport(h_mu=h, rho_mu=rho, r_mu=r, b_mu=b, marginal_entropy=marginal, excess_entropy=rho)

    gaps = {
        "b - (h - r)": b - (h - r),
        "rho - (H(1) - h)": rho - (marginal - h),
        "H(1) - (rho + r + b)": marginal - (rho + r + b),
    }
    for name, gap in gaps.items():
        if abs(gap) > IDENTITY_TOLERANCE:
            raise InconsistentResult("Rate identity %s is off by %.3g bits." % (name, gap))
    return report


@dataclass
class IdentityReport:
    table: object
    max_violation: float

    def to_dict(self):
        return {
            "max_violation": self.max_violation,
            "blocks": self.table.to_dict(orient="records"),
        }

    def to_frame(self):
        return self.table


def identity_checks(model: MarkovModel, n_max: int, logger=None) -> IdentityReport:
    """
    Checks the block decompositions against brute-force block tables.

    For n = 1..n_max, verifies H(n) = n h + I_pred(n) and
    I(X_1..n) + I_pred(n) = n rho, where I_pred(n) is measured by brute force
    between the block and the next symbol (all of the future that matters for a
    first-order chain), and also reports |I_pred(n) - rho|.

    Args:
        model: (MarkovModel) chain.
        n_max: (int) largest block length.
        logger: (logging.Logger) logger, module logger if None.

    Returns:
        (IdentityReport) one row per n and the largest absolute violation.
    """
    import pandas as pd

    if logger is None:
        logger = logging.getLogger(__name__)
    if model.k ** (n_max + 1) > MAX_STATES:
        raise BlockTooLarge("Identity checks up to n=%i need blocks of length %i over %i symbols."
                            % (n_max, n_max + 1, model.k))

    h = entropy_rate(model)
    rho = multi_information_rate(model)
    rows = []
    for n in range(1, n_max + 1):
        joint = block_joint(model, n)
        block = entropy(joint, SubsetMask.full(n))
        multi = multi_information(joint)
        i_pred = predictive_information(model, n, 1)
        row = {
            "n": n,
            "block_entropy": block,
            "multi_information": multi,
            "predictive_information": i_pred,
            "extensive_residual": block - (n * h + i_pred),
            "multi_information_residual": multi + i_pred - n * rho,
            "predictive_residual": i_pred - rho,
        }
        logger.debug("n=%i: H=%.12g, I=%.12g, I_pred=%.12g" % (n, block, multi, i_pred))
        rows.append(row)

    table = pd.DataFrame(rows)
    residual_columns = ["extensive_residual", "multi_information_residual", "predictive_residual"]
    max_violation = float(table[residual_columns].abs().to_numpy().max())
    logger.info("Identity checks up to n=%i: max violation %.3g bits" % (n_max, max_violation))
    return IdentityReport(table, max_violation)


def sample_sequence(model: MarkovModel, length: int, seed=None) -> np.ndarray:
    """
    Draws a stationary realization of the chain.

    The first symbol follows pi, then each symbol follows the row of its predecessor.
    The same seed always gives the same sequence.
    """
    if length < 1:
        raise ValueError("Sequence length must be positive, got %s." % length)
    rng = np.random.default_rng(seed)
    uniforms = rng.random(length)
    last = model.k - 1
    cumulative = np.cumsum(model.transition, axis=1)

    sequence = np.empty(length, dtype=np.int64)
    sequence[0] = min(int(np.searchsorted(np.cumsum(model.stationary), uniforms[0], side="right")), last)
    state = int(sequence[0])
    for start in range(1, length, SAMPLE_CHUNK):
        stop = min(start + SAMPLE_CHUNK, length)
        # successor of every state at every step of the chunk, from the same uniforms
        successors = np.stack([np.searchsorted(row, uniforms[start:stop], side="right") for row in cumulative])
        successors = np.minimum(successors, last).tolist()
        for offset in range(stop - start):
            state = successors[state][offset]
            sequence[start + offset] = state
    return sequence
