# coding: utf8

"""
Plug-in estimation of block distributions and rates from an observed symbol sequence.

Blocks are counted over all overlapping windows, without wraparound.
"""
import logging
import time
from dataclasses import dataclass

import numpy as np

from ..measures.measures import binding_information, entropy, multi_information
from ..tools.data.joint import MAX_STATES, JointTable, Shape, SubsetMask, make_joint
from ..tools.data.utils import read_tokens
from ..tools.exceptions import BlockTooLarge, MalformedFile, SequenceTooShort, SymbolOutOfRange
from ..tools.iotools import write_output


@dataclass(frozen=True)
class SymbolSequence:
    symbols: np.ndarray
    alphabet_size: int

    def __len__(self):
        return len(self.symbols)


def make_sequence(symbols, k) -> SymbolSequence:
    """
    Validates a sequence of symbols in 0..k-1.

    Raises:
        SequenceTooShort: the sequence is empty.
        SymbolOutOfRange: a symbol is negative or not below k.
    """
    array = np.array(symbols, dtype=np.int64).ravel()
    if array.size == 0:
        raise SequenceTooShort("A sequence needs at least one symbol.")
    if k < 2:
        raise SymbolOutOfRange("The alphabet size must be at least 2, got %s." % k)
    bad = np.flatnonzero((array < 0) | (array >= k))
    if bad.size > 0:
        raise SymbolOutOfRange("Symbol %i at position %i is outside 0..%i."
                               % (array[bad[0]], bad[0], k - 1))
    array.setflags(write=False)
    return SymbolSequence(array, int(k))


def read_sequence(path, k, logger=None) -> SymbolSequence:
    """
    Reads whitespace-separated integer symbols.

    Args:
        path: (str) path of the file, '-' for the standard input.
        k: (int) alphabet size.
        logger: (logging.Logger) logger, module logger if None.

    Returns:
        (SymbolSequence)

    Raises:
        FileNotFoundError: the file does not exist.
        EmptyFile: the file holds no symbol.
        MalformedFile: a token is not an integer.
        SymbolOutOfRange: a symbol is not in 0..k-1.
    """
    if logger is None:
        logger = logging.getLogger(__name__)

    start = time.perf_counter()
    tokens = read_tokens(path)
    try:
        symbols = np.array(tokens, dtype=np.int64)
    except ValueError as e:
        raise MalformedFile("Symbols of %s must be integers: %s" % (path, e))
    sequence = make_sequence(symbols, k)
    elapsed = time.perf_counter() - start
    logger.info("Read %i symbols from %s in %.3f s (%.0f symbols/s)"
                % (len(sequence), path, elapsed, len(sequence) / max(elapsed, 1e-9)))
    return sequence


def write_sequence(sequence, path=None):
    symbols = sequence.symbols if isinstance(sequence, SymbolSequence) else np.asarray(sequence)
    write_output(" ".join(map(str, symbols.tolist())) + "\n", path)


@dataclass(frozen=True)
class EmpiricalBlockModel:
    block_length: int
    alphabet_size: int
    counts: np.ndarray
    total_windows: int

    @property
    def windows_per_state(self) -> float:
        return self.total_windows / self.alphabet_size ** self.block_length


def empirical_blocks(sequence: SymbolSequence, n) -> EmpiricalBlockModel:
    """
    Counts the blocks of n consecutive symbols over all overlapping windows.

    Block codes follow the joint-table index: the first symbol of the window is
    the least significant digit.
    """
    k = sequence.alphabet_size
    if n < 1:
        raise ValueError("Block length must be positive, got %s." % n)
    if k ** n > MAX_STATES:
        raise BlockTooLarge("Blocks of length %i over %i symbols exceed the dense table limit." % (n, k))
    length = len(sequence)
    if length < n:
        raise SequenceTooShort("A sequence of %i symbols has no window of length %i." % (length, n))

    windows = length - n + 1
    codes = np.zeros(windows, dtype=np.int64)
    for j in range(n):
        codes += sequence.symbols[j:windows + j] * k ** j
    counts = np.bincount(codes, minlength=k ** n)
    counts.setflags(write=False)
    return EmpiricalBlockModel(n, k, counts, windows)


def to_joint(model: EmpiricalBlockModel) -> JointTable:
    return make_joint(Shape(model.block_length, model.alphabet_size), model.counts / model.total_windows)


@dataclass
class EstimateReport:
    table: object
    binding_information: float
    block_length: int
    sequence_length: int
    alphabet_size: int

    def to_dict(self):
        return {
            "sequence_length": self.sequence_length,
            "alphabet_size": self.alphabet_size,
            "n_max": self.block_length,
            "binding_information": self.binding_information,
            "blocks": self.table.to_dict(orient="records"),
        }

    def to_frame(self):
        return self.table


def estimated_rates(sequence: SymbolSequence, n_max, logger=None) -> EstimateReport:
    """
    Plug-in estimates of the block entropies and rates for n = 1..n_max.

    Columns of the report table:
        block_entropy H(n); entropy_rate h(n) = H(n) - H(n-1);
        excess_entropy E(n) = 2 H(n) - H(2n);
        multi_information_rate I(1..n) - I(1..n-1);
        windows_per_state, windows of length n per possible block (undersampling
        indicator).
    The binding information of the n_max-block is reported separately.

    Raises:
        SequenceTooShort: the sequence is shorter than 2 n_max.
        BlockTooLarge: K^(2 n_max) exceeds the dense table limit.
    """
    import pandas as pd

    if logger is None:
        logger = logging.getLogger(__name__)
    if n_max < 2:
        raise ValueError("n_max must be at least 2, got %s." % n_max)
    if len(sequence) < 2 * n_max:
        raise SequenceTooShort("Estimating up to n=%i needs at least %i symbols, got %i."
                               % (n_max, 2 * n_max, len(sequence)))
    if sequence.alphabet_size ** (2 * n_max) > MAX_STATES:
        raise BlockTooLarge("Blocks of length %i over %i symbols exceed the dense table limit."
                            % (2 * n_max, sequence.alphabet_size))

    block_entropies = {}
    multi_informations = {0: 0.0}
    joints = {}

    def block_entropy(n):
        if n not in block_entropies:
            model = empirical_blocks(sequence, n)
            joints[n] = (model, to_joint(model))
            block_entropies[n] = entropy(joints[n][1], SubsetMask.full(n))
        return block_entropies[n]

    rows = []
    for n in range(1, n_max + 1):
        h_n = block_entropy(n)
        previous = block_entropy(n - 1) if n > 1 else 0.0
        model, joint = joints[n]
        multi_informations[n] = multi_information(joint)
        rows.append({
            "n": n,
            "block_entropy": h_n,
            "entropy_rate": h_n - previous,
            "excess_entropy": 2 * h_n - block_entropy(2 * n),
            "multi_information_rate": multi_informations[n] - multi_informations[n - 1],
            "windows_per_state": model.windows_per_state,
        })
        logger.debug("n=%i: H=%.6f bits, %.1f windows per state" % (n, h_n, model.windows_per_state))

    binding = binding_information(joints[n_max][1])
    table = pd.DataFrame(rows)
    if table["windows_per_state"].iloc[-1] < 1:
        logger.warning("Fewer windows than states at n=%i: plug-in estimates are unreliable." % n_max)
    return EstimateReport(table, binding, n_max, len(sequence), sequence.alphabet_size)
