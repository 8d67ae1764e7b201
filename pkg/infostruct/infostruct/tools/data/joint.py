# coding: utf8

"""
Dense joint distributions over N discrete variables sharing an alphabet of K symbols.

Configurations are indexed in little-endian mixed radix: variable 1 is the
least significant digit, so index = sum_i x_i * K^(i-1). Reshaping the flat
table with order='F' gives a tensor whose axis i-1 is variable i.
"""
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from ..exceptions import (EmptySubset, InvalidShape, InvalidSymbol, NotADistribution,
                          ShapeMismatch, ShapeTooLarge)

MAX_STATES = 2 ** 28
NEGATIVE_NOISE = 1e-15
SUM_TOLERANCE = 1e-9

# One symbol in 0..K-1 per variable, variable 1 first
Configuration = Tuple[int, ...]


@dataclass(frozen=True)
class Shape:
    n_vars: int
    alphabet_size: int

    def __post_init__(self):
        if int(self.n_vars) != self.n_vars or self.n_vars < 1:
            raise InvalidShape("The number of variables must be a positive integer, got %s." % self.n_vars)
        if int(self.alphabet_size) != self.alphabet_size or self.alphabet_size < 2:
            raise InvalidShape("The alphabet size must be an integer >= 2, got %s." % self.alphabet_size)
        if self.alphabet_size ** self.n_vars > MAX_STATES:
            raise ShapeTooLarge("K^N = %i^%i exceeds the dense table limit of 2^28 states."
                                % (self.alphabet_size, self.n_vars))

    @property
    def state_count(self) -> int:
        return self.alphabet_size ** self.n_vars

    @property
    def tensor_shape(self) -> Tuple[int, ...]:
        return (self.alphabet_size,) * self.n_vars


@dataclass(frozen=True)
class SubsetMask:
    """Set of variable indices 1..N stored as a bit set (bit i-1 for variable i)."""
    bits: int = 0

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "SubsetMask":
        bits = 0
        for i in indices:
            if int(i) != i or i < 1:
                raise InvalidShape("Variable indices start at 1, got %s." % i)
            bits |= 1 << (int(i) - 1)
        return cls(bits)

    @classmethod
    def full(cls, n_vars: int) -> "SubsetMask":
        return cls((1 << n_vars) - 1)

    @classmethod
    def empty(cls) -> "SubsetMask":
        return cls(0)

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i in range(self.bits.bit_length()) if self.bits >> i & 1)

    def __len__(self):
        return bin(self.bits).count("1")

    def __bool__(self):
        return self.bits != 0

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, index):
        return index >= 1 and bool(self.bits >> (index - 1) & 1)

    def __or__(self, other):
        return SubsetMask(self.bits | other.bits)

    def __and__(self, other):
        return SubsetMask(self.bits & other.bits)

    def __sub__(self, other):
        return SubsetMask(self.bits & ~other.bits)

    def isdisjoint(self, other) -> bool:
        return not self.bits & other.bits

    def issubset(self, other) -> bool:
        return self.bits & ~other.bits == 0

    def validate(self, n_vars: int):
        if self.bits < 0 or self.bits >> n_vars:
            raise InvalidShape("Subset %s refers to variables outside 1..%i." % (self.indices, n_vars))
        return self

    def __repr__(self):
        return "SubsetMask(%s)" % (set(self.indices) if self.bits else "{}")


def all_subsets(n_vars: int, size: int = None):
    """Yields the nonempty subsets of 1..N (of the given size only, if provided) by increasing bits."""
    for bits in range(1, 1 << n_vars):
        mask = SubsetMask(bits)
        if size is None or len(mask) == size:
            yield mask


class JointTable:
    """
    Validated probability table over Shape.state_count configurations.

    The table is read-only; use make_joint to build one.
    """

    def __init__(self, shape: Shape, probs: np.ndarray):
        self.shape = shape
        self.probs = probs
        self.probs.setflags(write=False)

    @property
    def n_vars(self) -> int:
        return self.shape.n_vars

    @property
    def alphabet_size(self) -> int:
        return self.shape.alphabet_size

    def tensor(self) -> np.ndarray:
        return self.probs.reshape(self.shape.tensor_shape, order="F")

    def probability(self, config: Sequence[int]) -> float:
        return float(self.probs[index_of(self.shape, config)])

    def support(self, threshold: float = 0.0):
        """Configurations with probability above threshold, in index order."""
        return [config_of(self.shape, int(i)) for i in np.flatnonzero(self.probs > threshold)]

    def __eq__(self, other):
        return (isinstance(other, JointTable) and self.shape == other.shape
                and np.array_equal(self.probs, other.probs))

    def __repr__(self):
        return "JointTable(N=%i, K=%i)" % (self.n_vars, self.alphabet_size)


def make_joint(shape: Shape, probs) -> JointTable:
    """
    Builds a validated joint table.

    Args:
        shape: (Shape) number of variables and alphabet size.
        probs: (array-like) K^N probabilities in index order.

    Returns:
        (JointTable) table renormalized to sum to 1.

    Raises:
        ShapeMismatch: the array does not have K^N entries.
        NotADistribution: an entry is below -1e-15, is not finite, or the sum is
            more than 1e-9 away from 1.
    """
    array = np.array(probs, dtype=np.float64).ravel()
    if array.size != shape.state_count:
        raise ShapeMismatch("Expected %i probabilities for N=%i, K=%i, got %i."
                            % (shape.state_count, shape.n_vars, shape.alphabet_size, array.size))
    if not np.all(np.isfinite(array)):
        raise NotADistribution("Probabilities must be finite numbers.")
    if array.min() < -NEGATIVE_NOISE:
        raise NotADistribution("Negative probability %g at index %i."
                               % (array.min(), int(array.argmin())))
    array[array < 0] = 0.0
    total = array.sum()
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise NotADistribution("Probabilities sum to %.12g instead of 1." % total)

    return JointTable(shape, array / total)


def index_of(shape: Shape, config: Configuration) -> int:
    if len(config) != shape.n_vars:
        raise InvalidSymbol("Configuration %s must have %i symbols." % (tuple(config), shape.n_vars))
    index = 0
    for position, symbol in enumerate(config):
        if int(symbol) != symbol or not 0 <= symbol < shape.alphabet_size:
            raise InvalidSymbol("Symbol %s of variable %i is outside 0..%i."
                                % (symbol, position + 1, shape.alphabet_size - 1))
        index += int(symbol) * shape.alphabet_size ** position
    return index


def config_of(shape: Shape, index: int) -> Configuration:
    if not 0 <= index < shape.state_count:
        raise InvalidSymbol("Index %i is outside 0..%i." % (index, shape.state_count - 1))
    config = []
    for _ in range(shape.n_vars):
        index, symbol = divmod(index, shape.alphabet_size)
        config.append(symbol)
    return tuple(config)


def marginalize(joint: JointTable, keep: SubsetMask) -> JointTable:
    """
    Sums out the variables outside keep.

    The variables of the result are the kept ones in increasing index order.
    """
    keep.validate(joint.n_vars)
    if not keep:
        raise EmptySubset("Cannot marginalize onto the empty set of variables.")
    if len(keep) == joint.n_vars:
        return joint

    dropped = tuple(i for i in range(joint.n_vars) if (i + 1) not in keep)
    marginal = joint.tensor().sum(axis=dropped).ravel(order="F")
    shape = Shape(len(keep), joint.alphabet_size)
    return JointTable(shape, marginal / marginal.sum())


def relabel(joint: JointTable, permutations) -> JointTable:
    """Applies the symbol permutation permutations[i] to variable i+1."""
    tensor = joint.tensor()
    for axis, permutation in enumerate(permutations):
        inverse = np.argsort(permutation)
        tensor = np.take(tensor, inverse, axis=axis)
    return JointTable(joint.shape, tensor.ravel(order="F").copy())
