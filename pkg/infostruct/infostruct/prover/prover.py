# coding: utf8

"""
Per-N proofs that an entropy functional is nonnegative on every distribution.

A target is proven when it is a nonnegative combination of Shannon cone
generators; otherwise an exact pseudo-entropy vector satisfying every
generator and making the target negative refutes it. Both outcomes are exact
rationals. Permutation-invariant targets are decided on the N-dimensional
symmetric cone, any target with N <= 6 on the full elemental cone.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Tuple, Union

from ..tools.exceptions import DimensionMismatch, TooManyVariables, UnsupportedN
from .functionals import (SUBSET_TERM, EntropyFunctional, SymmetricFunctional, elemental_inequalities,
                          format_subset, functional_from_measure, is_symmetric, parse_symmetric_target,
                          symmetric_generators, symmetrize)
from .simplex import solve_feasibility, solve_square

MAX_GENERAL_N = 6
SYMMETRIC = "symmetric"
ELEMENTAL = "elemental"
AUTO = "auto"
CONES = [AUTO, SYMMETRIC, ELEMENTAL]


@dataclass
class ProofCertificate:
    """
    Nonnegative multipliers, one per generator of the cone, whose combination
    equals the target coefficient by coefficient.
    """
    n: int
    cone: str
    labels: List[str]
    multipliers: List[Fraction]
    residual: Fraction = Fraction(0)

    proven = True

    def support(self) -> List[Tuple[str, Fraction]]:
        return [(label, value) for label, value in zip(self.labels, self.multipliers) if value != 0]

    def to_dict(self):
        return {
            "status": "proven",
            "n": self.n,
            "cone": self.cone,
            "residual": self.residual,
            "multipliers": [{"constraint": label, "multiplier": value}
                            for label, value in zip(self.labels, self.multipliers)],
        }


@dataclass
class Refutation:
    """
    Pseudo-entropy vector inside the cone on which the target is negative.

    For the symmetric cone the vector is the profile h_0..h_N; for the elemental
    cone it holds one value per nonempty subset, in subset-bits order.
    """
    n: int
    cone: str
    vector: List[Fraction]
    target_value: Fraction

    proven = False

    def to_dict(self):
        if self.cone == SYMMETRIC:
            vector = list(self.vector)
        else:
            vector = {format_subset_bits(bits + 1): value for bits, value in enumerate(self.vector)}
        return {
            "status": "refuted",
            "n": self.n,
            "cone": self.cone,
            "target_value": self.target_value,
            "vector": vector,
        }


def format_subset_bits(bits):
    from ..tools.data.joint import SubsetMask

    return format_subset(SubsetMask(bits))


def _primitive(vector: List[Fraction]) -> List[Fraction]:
    """Smallest positive multiple of vector with integer entries."""
    denominator = 1
    for value in vector:
        denominator = denominator * value.denominator // gcd(denominator, value.denominator)
    integers = [int(value * denominator) for value in vector]
    divisor = 0
    for value in integers:
        divisor = gcd(divisor, abs(value))
    if divisor == 0:
        return [Fraction(0)] * len(vector)
    return [Fraction(value, divisor) for value in integers]


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _single_generator(target: List[Fraction], generators: List[List[Fraction]]):
    """Index and ratio t > 0 with target = t * generator, or None."""
    for index, generator in enumerate(generators):
        ratio = None
        for t, g in zip(target, generator):
            if g == 0:
                if t != 0:
                    break
                continue
            r = t / g
            if r <= 0 or (ratio is not None and r != ratio):
                break
            ratio = r
        else:
            if ratio is not None:
                return index, ratio
    return None


def _decide(n, cone, target_vector, labels, generator_vectors, logger):
    """Runs the fast path then the exact LP; returns multipliers or a Farkas vector."""
    single = _single_generator(target_vector, generator_vectors)
    if single is not None:
        index, ratio = single
        multipliers = [Fraction(0)] * len(generator_vectors)
        multipliers[index] = ratio
        logger.debug("Target is %s times generator %s" % (ratio, labels[index]))
        return multipliers, None

    result = solve_feasibility(generator_vectors, target_vector, logger=logger)
    logger.debug("Exact LP on the %s cone (N=%i): %i pivots" % (cone, n, result.pivots))
    if result.feasible:
        return result.solution, None
    # Farkas y has g.y <= 0 for all generators and c.y > 0; -y refutes
    return None, [-value for value in result.farkas]


def _residual(target_vector, generator_vectors, multipliers) -> Fraction:
    combination = [Fraction(0)] * len(target_vector)
    for multiplier, generator in zip(multipliers, generator_vectors):
        if multiplier != 0:
            for i, g in enumerate(generator):
                combination[i] += multiplier * g
    return max((abs(c - t) for c, t in zip(combination, target_vector)), default=Fraction(0))


def _snap_to_ray(vector, target_vector, generator_vectors):
    """
    Replaces a refuting vector of the simplicial symmetric cone by an extreme ray.

    The cone {h : G h >= 0} has the rays G^-1 e_j. Writing the vector as
    sum_j mu_j r_j with mu = G h >= 0, some ray with mu_j > 0 makes the target
    negative; the first one is returned.
    """
    size = len(target_vector)
    weights = [_dot(generator, vector) for generator in generator_vectors]
    for j, weight in enumerate(weights):
        if weight <= 0:
            continue
        unit = [Fraction(1) if i == j else Fraction(0) for i in range(size)]
        ray = solve_square(generator_vectors, unit)
        if _dot(target_vector, ray) < 0:
            return ray
    return vector


def prove_symmetric(n, target: SymmetricFunctional, logger=None) -> Union[ProofCertificate, Refutation]:
    """
    Decides a symmetric target over the symmetric Shannon cone.

    Args:
        n: (int) number of variables, at least 2.
        target: (SymmetricFunctional) coefficients over subset sizes.
        logger: (logging.Logger) logger, module logger if None.

    Returns:
        ProofCertificate with exact multipliers over symmetric_generators(n), or
        a Refutation holding an extreme-ray profile h_0..h_N with integer entries.
    """
    if logger is None:
        logger = logging.getLogger(__name__)
    if n < 2:
        raise UnsupportedN("Symmetric proofs need N >= 2, got N=%s." % n)
    if target.n != n:
        raise DimensionMismatch("Target over %i variables, prover asked for N=%i." % (target.n, n))

    generators = symmetric_generators(n)
    labels = [label for label, _ in generators]
    generator_vectors = [generator.vector() for _, generator in generators]
    target_vector = target.vector()

    multipliers, refuting = _decide(n, SYMMETRIC, target_vector, labels, generator_vectors, logger)
    if multipliers is not None:
        residual = _residual(target_vector, generator_vectors, multipliers)
        logger.info("N=%i: %s proven on the symmetric cone" % (n, target))
        return ProofCertificate(n, SYMMETRIC, labels, multipliers, residual)

    ray = _primitive(_snap_to_ray(refuting, target_vector, generator_vectors))
    logger.info("N=%i: %s refuted on the symmetric cone" % (n, target))
    return Refutation(n, SYMMETRIC, [Fraction(0)] + ray, _dot(target_vector, ray))


def prove_general(n, target: EntropyFunctional, logger=None) -> Union[ProofCertificate, Refutation]:
    """
    Decides any target over the full elemental cone (2^N - 1 coordinates).

    Raises:
        TooManyVariables: N > 6.
    """
    if logger is None:
        logger = logging.getLogger(__name__)
    if n > MAX_GENERAL_N:
        raise TooManyVariables("The elemental cone is limited to N <= %i, got N=%i." % (MAX_GENERAL_N, n))
    if n < 1:
        raise UnsupportedN("Proofs need N >= 1, got N=%s." % n)
    if target.n != n:
        raise DimensionMismatch("Target over %i variables, prover asked for N=%i." % (target.n, n))

    inequalities = elemental_inequalities(n)
    labels = [label for label, _ in inequalities]
    generator_vectors = [inequality.vector() for _, inequality in inequalities]
    target_vector = target.vector()

    multipliers, refuting = _decide(n, ELEMENTAL, target_vector, labels, generator_vectors, logger)
    if multipliers is not None:
        residual = _residual(target_vector, generator_vectors, multipliers)
        logger.info("N=%i: target proven on the elemental cone" % n)
        return ProofCertificate(n, ELEMENTAL, labels, multipliers, residual)

    vector = _primitive(refuting)
    logger.info("N=%i: target refuted on the elemental cone" % n)
    return Refutation(n, ELEMENTAL, vector, _dot(target_vector, vector))


def prove(n, target: EntropyFunctional, logger=None) -> Union[ProofCertificate, Refutation]:
    """Symmetric path for permutation-invariant targets, elemental path otherwise."""
    if is_symmetric(target) and n >= 2:
        return prove_symmetric(n, symmetrize(target), logger=logger)
    return prove_general(n, target, logger=logger)


def _cone_of(target, certificate):
    if isinstance(target, SymmetricFunctional):
        expected = SYMMETRIC
    elif isinstance(target, EntropyFunctional):
        expected = ELEMENTAL
    else:
        raise TypeError("Unknown target type %s." % type(target).__name__)
    if certificate.cone != expected:
        raise DimensionMismatch("A %s certificate cannot prove a %s target." % (certificate.cone, expected))
    if certificate.n != target.n:
        raise DimensionMismatch("Certificate for N=%i applied to a target over N=%i."
                                % (certificate.n, target.n))
    return expected


def _generator_vectors(cone, n):
    if cone == SYMMETRIC:
        return [generator.vector() for _, generator in symmetric_generators(n)]
    return [inequality.vector() for _, inequality in elemental_inequalities(n)]


def verify_certificate(target, certificate: ProofCertificate) -> bool:
    """
    Recomputes the combination of generators exactly, independently of the LP.

    Raises:
        DimensionMismatch: the certificate was built for another N or cone.
    """
    cone = _cone_of(target, certificate)
    generator_vectors = _generator_vectors(cone, target.n)
    if len(certificate.multipliers) != len(generator_vectors):
        raise DimensionMismatch("Certificate has %i multipliers for %i generators."
                                % (len(certificate.multipliers), len(generator_vectors)))
    if any(Fraction(value) < 0 for value in certificate.multipliers):
        return False
    return _residual(target.vector(), generator_vectors, [Fraction(v) for v in certificate.multipliers]) == 0


def verify_refutation(target, refutation: Refutation) -> bool:
    """Checks that the vector satisfies every generator and makes the target strictly negative."""
    cone = _cone_of(target, refutation)
    vector = list(refutation.vector)
    if cone == SYMMETRIC:
        vector = vector[1:]
    generator_vectors = _generator_vectors(cone, target.n)
    if any(_dot(generator, vector) < 0 for generator in generator_vectors):
        return False
    return _dot(target.vector(), vector) < 0


def prove_target(text, n, cone=AUTO, logger=None):
    """
    Parses a textual target and decides it.

    With cone 'auto', targets written over B, I and H only go straight to the
    symmetric cone (any N); targets naming single subset entropies take the
    elemental cone, or the symmetric one when they turn out invariant.

    Returns:
        (target, result) where target is the SymmetricFunctional or
        EntropyFunctional that was decided and result a ProofCertificate or a
        Refutation.
    """
    if cone not in CONES:
        raise ValueError("Cone %s must be in %s." % (cone, CONES))
    if cone == ELEMENTAL and n > MAX_GENERAL_N:
        raise TooManyVariables("The elemental cone is limited to N <= %i, got N=%i." % (MAX_GENERAL_N, n))
    if cone == SYMMETRIC or (cone == AUTO and not SUBSET_TERM.search(text)):
        target = parse_symmetric_target(text, n)
        return target, prove_symmetric(n, target, logger=logger)

    target = functional_from_measure(n, text)
    if cone == AUTO and is_symmetric(target):
        target = symmetrize(target)
        return target, prove_symmetric(n, target, logger=logger)
    return target, prove_general(n, target, logger=logger)
