# coding: utf8

"""
Information measures of a finite set of discrete variables, in bits.

Conditional quantities are differences of marginal entropies; no conditional
distribution is ever formed.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from scipy.stats import entropy as shannon_entropy

from ..tools.data.joint import JointTable, SubsetMask, all_subsets
from ..tools.exceptions import EmptySubset, InconsistentResult, NotAPermutation, OverlappingSubsets

NEGATIVE_TOLERANCE = 1e-9


def clamp(value, what="quantity"):
    """Sets float cancellation noise in [-1e-9, 0) to 0 and rejects anything below."""
    if value < -NEGATIVE_TOLERANCE:
        raise InconsistentResult("The %s is negative (%.3g bits)." % (what, value))
    return max(float(value), 0.0)


def _marginal(joint: JointTable, bits: int) -> np.ndarray:
    dropped = tuple(i for i in range(joint.n_vars) if not bits >> i & 1)
    if len(dropped) == 0:
        return joint.probs
    return joint.tensor().sum(axis=dropped).ravel(order="F")


def _entropy(joint: JointTable, bits: int) -> float:
    if bits == 0:
        return 0.0
    return float(shannon_entropy(_marginal(joint, bits), base=2))


def entropy(joint: JointTable, subset: SubsetMask) -> float:
    """
    Shannon entropy of the marginal over subset.

    Args:
        joint: (JointTable) distribution.
        subset: (SubsetMask) nonempty set of variables.

    Returns:
        (float) entropy in bits, with 0 log 0 = 0.
    """
    subset.validate(joint.n_vars)
    if not subset:
        raise EmptySubset("The entropy of the empty set of variables is not defined here.")
    return _entropy(joint, subset.bits)


def subset_entropies(joint: JointTable) -> dict:
    """Entropy vector: H(X_S) for every nonempty subset S, keyed by SubsetMask."""
    return {mask: _entropy(joint, mask.bits) for mask in all_subsets(joint.n_vars)}


def conditional_entropy(joint: JointTable, target: SubsetMask, given: SubsetMask = SubsetMask()) -> float:
    target.validate(joint.n_vars)
    given.validate(joint.n_vars)
    if not target:
        raise EmptySubset("The target of a conditional entropy must be nonempty.")
    if not target.isdisjoint(given):
        raise OverlappingSubsets("Target %s and condition %s overlap." % (target.indices, given.indices))

    value = _entropy(joint, (target | given).bits) - _entropy(joint, given.bits)
    return clamp(value, "conditional entropy")


def mutual_information(joint: JointTable, a: SubsetMask, b: SubsetMask,
                       given: SubsetMask = SubsetMask()) -> float:
    """
    Conditional mutual information I(X_a; X_b | X_given) in bits.

    Raises:
        EmptySubset: a or b is empty.
        OverlappingSubsets: a, b and given are not pairwise disjoint.
    """
    for mask in (a, b, given):
        mask.validate(joint.n_vars)
    if not a or not b:
        raise EmptySubset("Both sides of a mutual information must be nonempty.")
    if not (a.isdisjoint(b) and a.isdisjoint(given) and b.isdisjoint(given)):
        raise OverlappingSubsets("Subsets %s, %s and %s must be pairwise disjoint."
                                 % (a.indices, b.indices, given.indices))

    value = (_entropy(joint, (a | given).bits) + _entropy(joint, (b | given).bits)
             - _entropy(joint, (a | b | given).bits) - _entropy(joint, given.bits))
    return clamp(value, "mutual information")


def multi_information(joint: JointTable) -> float:
    full = SubsetMask.full(joint.n_vars).bits
    value = sum(_entropy(joint, 1 << i) for i in range(joint.n_vars)) - _entropy(joint, full)
    return clamp(value, "multi-information")


def binding_information(joint: JointTable) -> float:
    """B = sum_i H(X without i) - (N-1) H(X)."""
    n = joint.n_vars
    full = SubsetMask.full(n).bits
    value = sum(_entropy(joint, full & ~(1 << i)) for i in range(n)) - (n - 1) * _entropy(joint, full)
    return clamp(value, "binding information")


def entropy_triple(joint: JointTable):
    """(H, I, B) sharing the N singleton and N co-singleton marginal entropies."""
    n = joint.n_vars
    full = SubsetMask.full(n).bits
    joint_entropy = _entropy(joint, full)
    singletons = sum(_entropy(joint, 1 << i) for i in range(n))
    co_singletons = sum(_entropy(joint, full & ~(1 << i)) for i in range(n))
    multi = clamp(singletons - joint_entropy, "multi-information")
    binding = clamp(co_singletons - (n - 1) * joint_entropy, "binding information")
    return joint_entropy, multi, binding


def residual_entropy(joint: JointTable) -> float:
    """Sum over the variables of their entropy given all the others."""
    n = joint.n_vars
    full = SubsetMask.full(n).bits
    joint_entropy = _entropy(joint, full)
    value = sum(clamp(joint_entropy - _entropy(joint, full & ~(1 << i)), "conditional entropy")
                for i in range(n))
    return clamp(value, "residual entropy")


def check_ordering(ordering: Sequence[int], n_vars: int) -> List[int]:
    ordering = list(ordering)
    if sorted(ordering) != list(range(1, n_vars + 1)):
        raise NotAPermutation("Ordering %s is not a permutation of 1..%i." % (ordering, n_vars))
    return ordering


def pir_profile(joint: JointTable, ordering: Sequence[int] = None) -> List[float]:
    """
    Information each variable carries about the later ones, given the earlier ones.

    Args:
        joint: (JointTable) distribution.
        ordering: (list of int) permutation of 1..N, identity if None.

    Returns:
        (list of float) element t is I(X_o(t); X_o(t+1..N) | X_o(1..t-1)) in bits;
        the last element is 0.
    """
    n = joint.n_vars
    ordering = check_ordering(ordering if ordering is not None else range(1, n + 1), n)

    profile = []
    past = 0
    for t, variable in enumerate(ordering):
        present = 1 << (variable - 1)
        future = 0
        for later in ordering[t + 1:]:
            future |= 1 << (later - 1)
        if future == 0:
            profile.append(0.0)
        else:
            value = (_entropy(joint, present | past) + _entropy(joint, future | past)
                     - _entropy(joint, present | future | past) - _entropy(joint, past))
            profile.append(clamp(value, "predictive information"))
        past |= present

    return profile


def binding_by_accumulation(joint: JointTable, ordering: Sequence[int] = None) -> float:
    return float(sum(pir_profile(joint, ordering)))


@dataclass
class MeasureReport:
    joint_entropy: float
    multi_information: float
    binding_information: float
    residual_entropy: float
    per_variable_entropies: List[float]
    ordering: Optional[List[int]] = None
    pir_profile: Optional[List[float]] = field(default=None)

    def to_dict(self):
        report = {
            "n_vars": len(self.per_variable_entropies),
            "joint_entropy": self.joint_entropy,
            "multi_information": self.multi_information,
            "binding_information": self.binding_information,
            "residual_entropy": self.residual_entropy,
            "per_variable_entropies": list(self.per_variable_entropies),
        }
        if self.pir_profile is not None:
            report["ordering"] = list(self.ordering)
            report["pir_profile"] = list(self.pir_profile)
        return report

    def to_frame(self):
        import pandas as pd

        row = {
            "H": self.joint_entropy,
            "I": self.multi_information,
            "B": self.binding_information,
            "residual": self.residual_entropy,
        }
        for i, value in enumerate(self.per_variable_entropies):
            row["H_%i" % (i + 1)] = value
        if self.pir_profile is not None:
            for variable, value in zip(self.ordering, self.pir_profile):
                row["pir_%i" % variable] = value
        return pd.DataFrame([row])


def measure_report(joint: JointTable, ordering: Sequence[int] = None) -> MeasureReport:
    """
    Computes every finite-set measure of a joint table.

    The decomposition H = B + residual is checked and a mismatch above 1e-9 bits
    raises InconsistentResult.
    """
    report = MeasureReport(
        joint_entropy=entropy(joint, SubsetMask.full(joint.n_vars)),
        multi_information=multi_information(joint),
        binding_information=binding_information(joint),
        residual_entropy=residual_entropy(joint),
        per_variable_entropies=[_entropy(joint, 1 << i) for i in range(joint.n_vars)],
    )
    gap = report.joint_entropy - report.binding_information - report.residual_entropy
    if abs(gap) > NEGATIVE_TOLERANCE:
        raise InconsistentResult("H - B - residual = %.3g bits instead of 0." % gap)

    if ordering is not None:
        report.ordering = check_ordering(ordering, joint.n_vars)
        report.pir_profile = pir_profile(joint, report.ordering)

    return report
