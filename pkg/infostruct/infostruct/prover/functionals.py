# coding: utf8

"""
Exact linear functionals of subset entropies.

An EntropyFunctional is sum_S c_S H(X_S) over nonempty subsets S of 1..N with
rational coefficients. A SymmetricFunctional is its image under permutation
symmetry, sum_k c_k h_k where h_k is the entropy shared by all k-subsets.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, Tuple

from ..tools.data.joint import SubsetMask
from ..tools.exceptions import DimensionMismatch, InvalidTarget, NotSymmetric, UnsupportedN

NAMED_TARGETS = ["(N-1)B-I", "(N-1)I-B"]


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if hasattr(value, "p") and hasattr(value, "q"):
        # sympy Rational
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


def format_subset(mask: SubsetMask) -> str:
    return ",".join(str(i) for i in mask.indices)


@dataclass(frozen=True)
class EntropyFunctional:
    n: int
    coefficients: Tuple[Tuple[SubsetMask, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, n, coefficients: Dict[SubsetMask, Fraction]) -> "EntropyFunctional":
        items = []
        for mask, value in coefficients.items():
            mask.validate(n)
            if not mask:
                raise InvalidTarget("Functionals are defined on nonempty subsets only.")
            value = to_fraction(value)
            if value != 0:
                items.append((mask, value))
        return cls(n, tuple(sorted(items, key=lambda item: item[0].bits)))

    @classmethod
    def subset_entropy(cls, n, indices, coefficient=1) -> "EntropyFunctional":
        return cls.from_dict(n, {SubsetMask.from_indices(indices): Fraction(coefficient)})

    def as_dict(self) -> Dict[SubsetMask, Fraction]:
        return dict(self.coefficients)

    def coefficient(self, mask: SubsetMask) -> Fraction:
        return self.as_dict().get(mask, Fraction(0))

    def _check(self, other):
        if other.n != self.n:
            raise DimensionMismatch("Cannot combine functionals over %i and %i variables." % (self.n, other.n))

    def __add__(self, other):
        self._check(other)
        total = self.as_dict()
        for mask, value in other.coefficients:
            total[mask] = total.get(mask, Fraction(0)) + value
        return EntropyFunctional.from_dict(self.n, total)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        scalar = to_fraction(scalar)
        return EntropyFunctional.from_dict(self.n, {mask: scalar * value for mask, value in self.coefficients})

    __rmul__ = __mul__

    def is_zero(self):
        return len(self.coefficients) == 0

    def vector(self):
        """Dense coefficients, position bits - 1 for each nonempty subset."""
        dense = [Fraction(0)] * ((1 << self.n) - 1)
        for mask, value in self.coefficients:
            dense[mask.bits - 1] = value
        return dense

    def evaluate_on(self, joint) -> float:
        from ..measures.measures import subset_entropies

        if joint.n_vars != self.n:
            raise DimensionMismatch("Functional over %i variables applied to a table over %i."
                                    % (self.n, joint.n_vars))
        entropies = subset_entropies(joint)
        return float(sum(float(value) * entropies[mask] for mask, value in self.coefficients))

    def to_dict(self):
        return {"n": self.n,
                "coefficients": {format_subset(mask): value for mask, value in self.coefficients}}

    def __str__(self):
        if self.is_zero():
            return "0"
        return " + ".join("%s H(%s)" % (value, format_subset(mask)) for mask, value in self.coefficients)


@dataclass(frozen=True)
class SymmetricFunctional:
    """Coefficients c_0..c_N over subset sizes; c_0 multiplies h_0 = 0 and is kept at 0."""
    n: int
    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.n + 1:
            raise DimensionMismatch("A symmetric functional over %i variables needs %i coefficients, got %i."
                                    % (self.n, self.n + 1, len(self.coefficients)))

    @classmethod
    def from_sizes(cls, n, coefficients) -> "SymmetricFunctional":
        """Builds the functional from c_1..c_N."""
        return cls(n, (Fraction(0),) + tuple(to_fraction(c) for c in coefficients))

    def vector(self):
        """Coefficients of h_1..h_N."""
        return list(self.coefficients[1:])

    def evaluate(self, profile):
        """Value on an entropy profile h_0..h_N (h_0 is ignored) or h_1..h_N."""
        values = list(profile)
        if len(values) == self.n + 1:
            values = values[1:]
        if len(values) != self.n:
            raise DimensionMismatch("Profile of length %i for a functional over %i variables."
                                    % (len(values), self.n))
        return sum(c * h for c, h in zip(self.coefficients[1:], values))

    def to_dict(self):
        return {"n": self.n, "coefficients": list(self.coefficients)}

    def __str__(self):
        terms = ["%s h%i" % (c, k) for k, c in enumerate(self.coefficients) if k > 0 and c != 0]
        return " + ".join(terms) if terms else "0"


def joint_entropy_functional(n) -> EntropyFunctional:
    return EntropyFunctional.from_dict(n, {SubsetMask.full(n): Fraction(1)})


def multi_information_functional(n) -> EntropyFunctional:
    """I = sum_i H(X_i) - H(X)."""
    coefficients = {SubsetMask.from_indices([i]): Fraction(1) for i in range(1, n + 1)}
    full = SubsetMask.full(n)
    coefficients[full] = coefficients.get(full, Fraction(0)) - 1
    return EntropyFunctional.from_dict(n, coefficients)


def binding_information_functional(n) -> EntropyFunctional:
    """B = sum_i H(X without i) - (N-1) H(X)."""
    full = SubsetMask.full(n)
    coefficients = {}
    for i in range(1, n + 1):
        rest = full - SubsetMask.from_indices([i])
        if rest:
            coefficients[rest] = coefficients.get(rest, Fraction(0)) + 1
    coefficients[full] = coefficients.get(full, Fraction(0)) - (n - 1)
    return EntropyFunctional.from_dict(n, coefficients)


SUBSET_TERM = re.compile(r"H\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)")
MEASURE_TERMS = ["B", "I", "H"]


def _parse_coefficients(text, n, subset_terms=True) -> Dict[str, Fraction]:
    """Rational coefficient of every term of a homogeneous linear target."""
    import sympy
    from sympy.parsing.sympy_parser import implicit_multiplication, parse_expr, standard_transformations

    names = list(MEASURE_TERMS)

    def subset_symbol(match):
        if not subset_terms:
            raise InvalidTarget("Subset entropies such as H(%s) have no symmetric form." % match.group(1))
        indices = sorted({int(i) for i in match.group(1).split(",")})
        if indices[0] < 1 or indices[-1] > n:
            raise InvalidTarget("H(%s) refers to variables outside 1..%i." % (match.group(1), n))
        name = "H_" + "_".join(str(i) for i in indices)
        if name not in names:
            names.append(name)
        return " " + name + " "

    expression_text = SUBSET_TERM.sub(subset_symbol, text)
    symbols = {name: sympy.Symbol(name) for name in names}
    local_dict = dict(symbols)
    local_dict["N"] = sympy.Integer(n)
    local_dict["n"] = sympy.Integer(n)
    try:
        expression = parse_expr(expression_text, local_dict=local_dict,
                                transformations=standard_transformations + (implicit_multiplication,))
    except Exception as e:
        # sympy raises tokenizer and sympify errors of its own
        raise InvalidTarget("Cannot parse target '%s': %s" % (text, e))

    expression = sympy.expand(expression)
    unknown = {str(s) for s in expression.free_symbols} - set(symbols)
    if unknown:
        raise InvalidTarget("Unknown terms %s in target '%s'; use B, I, H, H(i,j,...) and N."
                            % (sorted(unknown), text))

    coefficients = {}
    remainder = expression
    for name, symbol in symbols.items():
        coefficient = expression.coeff(symbol)
        if coefficient == 0:
            continue
        if not coefficient.is_Rational:
            raise InvalidTarget("Target '%s' is not linear in %s." % (text, name))
        coefficients[name] = to_fraction(coefficient)
        remainder = remainder - coefficient * symbol
    if sympy.simplify(remainder) != 0:
        raise InvalidTarget("Target '%s' is not a linear combination of the entropy terms without constant." % text)
    return coefficients


def parse_target(text, n) -> EntropyFunctional:
    """
    Parses a linear target over B, I and H with coefficients that may depend on N.

    Single subset entropies are written H(1,2). Examples: "(N-1)B-I", "I-B",
    "2H(1)-H(1,2)".

    Raises:
        InvalidTarget: the text is not a homogeneous linear expression of the
            known terms.
    """
    if n < 1:
        raise UnsupportedN("Targets need at least one variable, got N=%s." % n)

    terms = {
        "B": binding_information_functional,
        "I": multi_information_functional,
        "H": joint_entropy_functional,
    }
    functional = EntropyFunctional(n)
    for name, coefficient in _parse_coefficients(text, n).items():
        if name in terms:
            term = terms[name](n)
        else:
            term = EntropyFunctional.subset_entropy(n, [int(i) for i in name.split("_")[1:]])
        functional = functional + term * coefficient
    return functional


def symmetric_measures(n) -> Dict[str, SymmetricFunctional]:
    """B, I and H over subset sizes, without enumerating the 2^N subsets."""
    binding = [Fraction(0)] * (n + 1)
    binding[n - 1] += n
    binding[n] -= n - 1
    multi = [Fraction(0)] * (n + 1)
    multi[1] += n
    multi[n] -= 1
    joint = [Fraction(0)] * (n + 1)
    joint[n] = Fraction(1)
    return {"B": SymmetricFunctional(n, tuple(binding)),
            "I": SymmetricFunctional(n, tuple(multi)),
            "H": SymmetricFunctional(n, tuple(joint))}


def parse_symmetric_target(text, n) -> SymmetricFunctional:
    """
    Parses a target over B, I and H straight into subset-size coefficients.

    Any N >= 2 is accepted since no subset is enumerated.

    Raises:
        InvalidTarget: the text is not linear in B, I and H, or names a single
            subset entropy.
    """
    if n < 2:
        raise UnsupportedN("Targets are defined for N >= 2, got N=%s." % n)
    measures = symmetric_measures(n)
    total = [Fraction(0)] * (n + 1)
    for name, coefficient in _parse_coefficients(text, n, subset_terms=False).items():
        for size, value in enumerate(measures[name].coefficients):
            total[size] += coefficient * value
    return SymmetricFunctional(n, tuple(total))


def functional_from_measure(n, which) -> EntropyFunctional:
    """
    Exact entropy functional of a measure combination.

    Args:
        n: (int) number of variables, at least 2.
        which: (str) "(N-1)B-I", "(N-1)I-B" or any expression accepted by parse_target.

    Returns:
        (EntropyFunctional)
    """
    if n < 2:
        raise UnsupportedN("Targets are defined for N >= 2, got N=%s." % n)
    binding = binding_information_functional(n)
    multi = multi_information_functional(n)
    compact = which.replace(" ", "")
    if compact == "(N-1)B-I":
        return binding * (n - 1) - multi
    elif compact == "(N-1)I-B":
        return multi * (n - 1) - binding
    else:
        return parse_target(which, n)


def is_symmetric(functional: EntropyFunctional) -> bool:
    """Whether all subsets of each size share one coefficient, from the nonzero terms only."""
    by_size = {}
    for mask, value in functional.coefficients:
        count, shared = by_size.get(len(mask), (0, value))
        if shared != value:
            return False
        by_size[len(mask)] = (count + 1, value)
    return all(count == comb(functional.n, size) for size, (count, _) in by_size.items())


def symmetrize(functional: EntropyFunctional) -> SymmetricFunctional:
    """
    Collapses a permutation-invariant functional to subset sizes.

    A functional is invariant under every permutation of the variables exactly
    when all subsets of the same size share one coefficient; c_k is the sum of
    the coefficients of the k-subsets.

    Raises:
        NotSymmetric: some permutation changes the functional.
    """
    if not is_symmetric(functional):
        raise NotSymmetric("Functional %s is not invariant under permutations of the variables." % functional)
    sizes = [Fraction(0)] * (functional.n + 1)
    for mask, value in functional.coefficients:
        sizes[len(mask)] += value
    return SymmetricFunctional(functional.n, tuple(sizes))


def elemental_inequalities(n):
    """
    Elemental Shannon inequalities as (label, functional) pairs.

    H(X_i | rest) >= 0 for every i, then I(X_i; X_j | X_S) >= 0 for i < j and
    every S within the other variables.
    """
    full = SubsetMask.full(n)
    inequalities = []
    for i in range(1, n + 1):
        rest = full - SubsetMask.from_indices([i])
        coefficients = {full: Fraction(1)}
        if rest:
            coefficients[rest] = Fraction(-1)
        label = "H(%i|%s)" % (i, format_subset(rest))
        inequalities.append((label, EntropyFunctional.from_dict(n, coefficients)))

    for i, j in combinations(range(1, n + 1), 2):
        pair = SubsetMask.from_indices([i, j])
        others = [v for v in range(1, n + 1) if v != i and v != j]
        for size in range(len(others) + 1):
            for given in combinations(others, size):
                s = SubsetMask.from_indices(given)
                coefficients = {}
                for mask, value in ((s | SubsetMask.from_indices([i]), 1), (s | SubsetMask.from_indices([j]), 1),
                                    (s | pair, -1), (s, -1)):
                    if mask:
                        coefficients[mask] = coefficients.get(mask, Fraction(0)) + value
                label = "I(%i;%i|%s)" % (i, j, format_subset(s))
                inequalities.append((label, EntropyFunctional.from_dict(n, coefficients)))
    return inequalities


def symmetric_generators(n):
    """
    Generators of the symmetric Shannon cone as (label, SymmetricFunctional) pairs.

    Size-wise submodularity 2 h_k - h_(k-1) - h_(k+1) >= 0 for k = 1..N-1
    (h_0 = 0), then top monotonicity h_N - h_(N-1) >= 0.
    """
    generators = []
    for k in range(1, n):
        coefficients = [Fraction(0)] * (n + 1)
        coefficients[k] += 2
        coefficients[k - 1] -= 1
        coefficients[k + 1] -= 1
        coefficients[0] = Fraction(0)
        generators.append(("submodular(%i)" % k, SymmetricFunctional(n, tuple(coefficients))))
    coefficients = [Fraction(0)] * (n + 1)
    coefficients[n] += 1
    if n > 1:
        coefficients[n - 1] -= 1
    generators.append(("monotone(%i)" % n, SymmetricFunctional(n, tuple(coefficients))))
    return generators
