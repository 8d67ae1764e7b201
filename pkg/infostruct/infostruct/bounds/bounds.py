# coding: utf8

"""
Linear bounds tying joint entropy H, multi-information I and binding information B
for N variables over K symbols.

The first five bounds are theorems; the last two (I <= (N-1) B and
B <= (N-1) I) are conjectures checked empirically here and per N by the prover.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..measures.measures import entropy_triple
from ..tools.data.joint import JointTable
from ..tools.exceptions import InvalidShape
from ..tools.data.processes import (giant_bit_process, independent_uniform, known_state, modulo_process,
                                    random_simplex)

VIOLATION_TOLERANCE = 1e-9

BOUND_NAMES = [
    "I<=NlogK-H",
    "I<=(N-1)H",
    "B<=H",
    "B<=(N-1)(NlogK-H)",
    "I+B<=NlogK",
    "I<=(N-1)B",
    "B<=(N-1)I",
]
THEOREM_BOUNDS = BOUND_NAMES[:5]


@dataclass
class BoundRecord:
    name: str
    lhs: float
    rhs: float
    margin: float
    satisfied: bool

    def to_dict(self):
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "margin": self.margin, "satisfied": self.satisfied}


@dataclass
class BoundsReport:
    n_vars: int
    alphabet_size: int
    joint_entropy: float
    multi_information: float
    binding_information: float
    records: List[BoundRecord]
    seed: Optional[int] = None

    @property
    def satisfied(self) -> bool:
        return all(record.satisfied for record in self.records)

    @property
    def margins(self) -> dict:
        return {record.name: record.margin for record in self.records}

    def record(self, name) -> BoundRecord:
        for record in self.records:
            if record.name == name:
                return record
        raise KeyError(name)

    def to_dict(self):
        report = {
            "n_vars": self.n_vars,
            "alphabet_size": self.alphabet_size,
            "H": self.joint_entropy,
            "I": self.multi_information,
            "B": self.binding_information,
            "satisfied": self.satisfied,
            "bounds": [record.to_dict() for record in self.records],
        }
        if self.seed is not None:
            report = {"seed": self.seed, **report}
        return report

    def to_row(self):
        row = {} if self.seed is None else {"seed": self.seed}
        row.update({"H": self.joint_entropy, "I": self.multi_information, "B": self.binding_information})
        row.update(self.margins)
        return row

    def to_frame(self):
        import pandas as pd

        return pd.DataFrame([self.to_row()])


def bound_sides(h, i, b, n, k):
    """(lhs, rhs) of every bound, in BOUND_NAMES order."""
    capacity = n * math.log2(k)
    return [
        (i, capacity - h),
        (i, (n - 1) * h),
        (b, h),
        (b, (n - 1) * (capacity - h)),
        (i + b, capacity),
        (i, (n - 1) * b),
        (b, (n - 1) * i),
    ]


def check_bounds(joint: JointTable, seed=None) -> BoundsReport:
    """
    Evaluates the seven bounds on a distribution.

    Args:
        joint: (JointTable) distribution of N variables over K symbols.
        seed: (int) seed the table was drawn with, kept in the report if given.

    Returns:
        (BoundsReport) margins rhs - lhs; a bound is satisfied when its margin is
        at least -1e-9 bits.
    """
    h, i, b = entropy_triple(joint)
    records = []
    for name, (lhs, rhs) in zip(BOUND_NAMES, bound_sides(h, i, b, joint.n_vars, joint.alphabet_size)):
        margin = rhs - lhs
        records.append(BoundRecord(name, lhs, rhs, margin, bool(margin >= -VIOLATION_TOLERANCE)))
    return BoundsReport(joint.n_vars, joint.alphabet_size, h, i, b, records, seed)


@dataclass
class CornerPoint:
    label: str
    joint_entropy: float
    multi_information: float
    binding_information: float

    def as_tuple(self):
        return self.joint_entropy, self.multi_information, self.binding_information

    def to_dict(self):
        return {"label": self.label, "H": self.joint_entropy, "I": self.multi_information,
                "B": self.binding_information}


def _corner_processes(n, k):
    processes = [("known", known_state(n, k, (0,) * n))]
    if k == 2:
        processes.append(("giant_bit", giant_bit_process(n)))
    processes.append(("parity" if k == 2 else "modulo", modulo_process(n, k, 0)))
    processes.append(("independent", independent_uniform(n, k)))
    return processes


def corner_points(n, k) -> List[CornerPoint]:
    """
    Measures the labelled processes bounding the (H, I, B) region.

    The giant-bit process only exists for binary variables, so for K > 2 three
    points are returned.
    """
    if n < 2:
        raise InvalidShape("Corner points need at least 2 variables, got %s." % n)
    points = []
    for label, joint in _corner_processes(n, k):
        points.append(CornerPoint(label, *entropy_triple(joint)))
    return points


def tightness_witnesses(n, k) -> dict:
    """
    For each bound, a canonical process attaining it (zero margin).

    Returns:
        (dict) bound name -> (label, BoundRecord) of the witness.
    """
    modulo = ("parity" if k == 2 else "modulo", modulo_process(n, k, 0))
    if k == 2:
        copies = ("giant_bit", giant_bit_process(n))
    else:
        copies = ("known", known_state(n, k, (0,) * n))
    witnesses = {
        "I<=NlogK-H": ("independent", independent_uniform(n, k)),
        "I<=(N-1)H": copies,
        "B<=H": modulo,
        "B<=(N-1)(NlogK-H)": modulo,
        "I+B<=NlogK": modulo,
        "I<=(N-1)B": copies,
        "B<=(N-1)I": modulo,
    }
    return {name: (label, check_bounds(joint).record(name)) for name, (label, joint) in witnesses.items()}


def sample_seeds(seed, samples):
    """Per-sample integer seeds derived from one root seed."""
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(samples)]


def sample_bounds(n, k, samples, seed=0, logger=None):
    """
    Checks the bounds on tables drawn uniformly from the simplex.

    Args:
        n: (int) number of variables.
        k: (int) alphabet size.
        samples: (int) number of tables.
        seed: (int) root seed; sample i is random_simplex(n, k, seed_i) with the
            seed_i reported in the 'seed' column.
        logger: (logging.Logger) logger, module logger if None.

    Returns:
        (pandas.DataFrame) columns seed, H, I, B and the seven margins.
    """
    import pandas as pd

    if logger is None:
        logger = logging.getLogger(__name__)

    rows = []
    for sample_seed in sample_seeds(seed, samples):
        rows.append(check_bounds(random_simplex(n, k, sample_seed), seed=sample_seed).to_row())
    frame = pd.DataFrame(rows, columns=["seed", "H", "I", "B"] + BOUND_NAMES)

    n_violating = int((frame[BOUND_NAMES] < -VIOLATION_TOLERANCE).any(axis=1).sum())
    logger.info("Checked %i samples for N=%i, K=%i: %i violating." % (samples, n, k, n_violating))
    return frame


def violations(frame):
    return frame[(frame[BOUND_NAMES] < -VIOLATION_TOLERANCE).any(axis=1)]


def dump_violations(frame, path, logger=None):
    """
    Writes the violating rows of a sample batch, seeds included, to a csv file.

    Returns:
        (int) number of violating samples; no file is written when there are none.
    """
    from ..tools.iotools import FLOAT_FORMAT, write_output

    if logger is None:
        logger = logging.getLogger(__name__)
    bad = violations(frame)
    if len(bad) > 0:
        write_output(bad.to_csv(index=False, float_format=FLOAT_FORMAT), path)
        logger.warning("%i violating samples written to %s" % (len(bad), path))
    return len(bad)
