# coding: utf8

"""
Constructors of the canonical distributions (known state, independent, giant bit,
modulo-K) and of random distributions used to exercise the bounds.
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from ..exceptions import InvalidResidue, InvalidShape
from .joint import JointTable, Shape, SubsetMask, index_of, make_joint

PROCESS_KINDS = ["modulo", "parity", "giant_bit", "independent_uniform", "known_state", "random_simplex"]


def modulo_process(n, k, m=0):
    """
    Uniform distribution on the configurations whose symbol sum is m modulo k.

    Args:
        n: (int) number of variables.
        k: (int) alphabet size.
        m: (int) residue, in 0..k-1.

    Returns:
        (JointTable) table with k^(n-1) equiprobable configurations.
    """
    shape = Shape(n, k)
    if int(m) != m or not 0 <= m < k:
        raise InvalidResidue("Residue %s must be in [0, %i]." % (m, k - 1))

    digit_sum = np.zeros(shape.tensor_shape, dtype=np.int64)
    for axis in range(n):
        values = np.arange(k).reshape([-1 if a == axis else 1 for a in range(n)])
        digit_sum = digit_sum + values
    support = (digit_sum % k == m).ravel(order="F")
    probs = support / support.sum()

    return make_joint(shape, probs)


def giant_bit_process(n, b_set=None):
    """Binary process equal to 1 exactly on b_set with probability 1/2, and to its complement otherwise."""
    shape = Shape(n, 2)
    if b_set is None:
        b_set = SubsetMask.full(n)
    b_set.validate(n)

    config = tuple(1 if (i + 1) in b_set else 0 for i in range(n))
    complement = tuple(1 - x for x in config)
    probs = np.zeros(shape.state_count)
    probs[index_of(shape, config)] += 0.5
    probs[index_of(shape, complement)] += 0.5

    return make_joint(shape, probs)


def independent_uniform(n, k):
    shape = Shape(n, k)
    return make_joint(shape, np.full(shape.state_count, 1.0 / shape.state_count))


def known_state(n, k, config):
    shape = Shape(n, k)
    probs = np.zeros(shape.state_count)
    probs[index_of(shape, config)] = 1.0
    return make_joint(shape, probs)


def random_simplex(n, k, seed=None):
    """
    Draws a table uniformly from the probability simplex over the k^n configurations.

    Normalized unit-rate exponential variates are Dirichlet(1, ..., 1) distributed.
    The same seed always gives the same table.
    """
    shape = Shape(n, k)
    rng = np.random.default_rng(seed)
    weights = rng.exponential(1.0, size=shape.state_count)
    return make_joint(shape, weights / weights.sum())


@dataclass(frozen=True)
class ProcessSpec:
    """Description of a canonical process, as given on the command line."""
    kind: str
    n: int
    k: int = 2
    m: int = 0
    bit_set: Optional[SubsetMask] = None
    config: Optional[Tuple[int, ...]] = None
    seed: Optional[int] = field(default=None)

    def __post_init__(self):
        if self.kind not in PROCESS_KINDS:
            raise ValueError("Kind %s must be in %s." % (self.kind, PROCESS_KINDS))
        if self.kind == "giant_bit" and self.k != 2:
            raise InvalidShape("Giant-bit processes are defined for binary variables only (K=2), got K=%i."
                               % self.k)
        if self.kind == "known_state" and self.config is None:
            raise InvalidShape("A known-state process needs a configuration.")


def build_process(spec: ProcessSpec) -> JointTable:
    if spec.kind in ("modulo", "parity"):
        return modulo_process(spec.n, spec.k, spec.m)
    elif spec.kind == "giant_bit":
        return giant_bit_process(spec.n, spec.bit_set)
    elif spec.kind == "independent_uniform":
        return independent_uniform(spec.n, spec.k)
    elif spec.kind == "known_state":
        return known_state(spec.n, spec.k, spec.config)
    else:
        return random_simplex(spec.n, spec.k, spec.seed)
