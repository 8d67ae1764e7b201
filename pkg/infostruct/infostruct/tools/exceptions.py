# coding: utf8

"""
Exceptions raised by infostruct.

Validation errors derive from ValueError, so that callers catching built-in
exceptions keep working. InfoStructError is the common base used by the command
line to separate domain errors from crashes.
"""


class InfoStructError(Exception):
    pass


# Shapes and tables
class InvalidShape(InfoStructError, ValueError):
    pass


class ShapeTooLarge(InfoStructError, ValueError):
    pass


class BlockTooLarge(ShapeTooLarge):
    pass


class StateSpaceTooLarge(ShapeTooLarge):
    pass


class ShapeMismatch(InfoStructError, ValueError):
    pass


class NotADistribution(InfoStructError, ValueError):
    pass


class InvalidSymbol(InfoStructError, ValueError):
    pass


class EmptySubset(InfoStructError, ValueError):
    pass


class OverlappingSubsets(InfoStructError, ValueError):
    pass


class NotAPermutation(InfoStructError, ValueError):
    pass


class InvalidResidue(InfoStructError, ValueError):
    pass


class InconsistentResult(InfoStructError, ArithmeticError):
    """A quantity that must be nonnegative came out below the float tolerance."""
    pass


# Markov chains
class NotStochastic(InfoStructError, ValueError):
    pass


class NonUniqueStationary(InfoStructError, ValueError):
    pass


# Prover
class NotSymmetric(InfoStructError, ValueError):
    pass


class UnsupportedN(InfoStructError, ValueError):
    pass


class TooManyVariables(InfoStructError, ValueError):
    pass


class DimensionMismatch(InfoStructError, ValueError):
    pass


class InvalidTarget(InfoStructError, ValueError):
    pass


# Sequences
class SequenceTooShort(InfoStructError, ValueError):
    pass


class SymbolOutOfRange(InfoStructError, ValueError):
    pass


class EmptyFile(InfoStructError, ValueError):
    pass


class MalformedFile(InfoStructError, ValueError):
    pass
