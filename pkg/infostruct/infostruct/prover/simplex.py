# coding: utf8

"""
Exact feasibility linear programs over the rationals.

Decides whether A x = b has a solution x >= 0 with a phase-one simplex on a
dense Fraction tableau. Bland's rule (lowest entering index, then lowest basic
index among tied ratios) guarantees termination. When the system is infeasible
the simplex multipliers of the final tableau give a Farkas certificate y with
y.A_j <= 0 for every column j and y.b > 0.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class FeasibilityResult:
    feasible: bool
    solution: Optional[List[Fraction]] = None
    farkas: Optional[List[Fraction]] = None
    pivots: int = 0


class SimplexTableau:
    """
    Phase-one tableau for A x = b, x >= 0.

    Rows with a negative right-hand side are negated, then one artificial
    variable per row (columns n..n+m-1) provides the starting basis. The
    artificial columns are kept in the tableau: they hold the inverse of the
    current basis, from which the simplex multipliers are read.
    """

    def __init__(self, columns: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
        self.m = len(rhs)
        self.n = len(columns)
        for column in columns:
            if len(column) != self.m:
                raise ValueError("Every column must have %i entries, got %i." % (self.m, len(column)))

        self.signs = [ONE if Fraction(b) >= 0 else -ONE for b in rhs]
        width = self.n + self.m
        self.rows = []
        for i in range(self.m):
            row = [self.signs[i] * Fraction(columns[j][i]) for j in range(self.n)]
            row += [ONE if i == a else ZERO for a in range(self.m)]
            self.rows.append(row)
        self.rhs = [self.signs[i] * Fraction(rhs[i]) for i in range(self.m)]
        self.basis = list(range(self.n, width))
        self.costs = [ZERO] * self.n + [ONE] * self.m
        # reduced costs with the artificial basis
        self.reduced = [self.costs[j] - sum(row[j] for row in self.rows) for j in range(width)]
        self.pivots = 0

    @property
    def objective(self) -> Fraction:
        return sum((self.costs[self.basis[i]] * self.rhs[i] for i in range(self.m)), ZERO)

    def entering(self):
        for j, r in enumerate(self.reduced):
            if r < 0:
                return j
        return None

    def leaving(self, j):
        best = None
        for i in range(self.m):
            a = self.rows[i][j]
            if a > 0:
                key = (self.rhs[i] / a, self.basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        return None if best is None else best[1]

    def pivot(self, i, j):
        pivot_row = self.rows[i]
        value = pivot_row[j]
        if value != 1:
            pivot_row = [a / value for a in pivot_row]
            self.rows[i] = pivot_row
            self.rhs[i] = self.rhs[i] / value
        support = [l for l, a in enumerate(pivot_row) if a != 0]

        for k in range(self.m):
            if k == i:
                continue
            factor = self.rows[k][j]
            if factor == 0:
                continue
            row = self.rows[k]
            for l in support:
                row[l] -= factor * pivot_row[l]
            self.rhs[k] -= factor * self.rhs[i]

        factor = self.reduced[j]
        if factor != 0:
            for l in support:
                self.reduced[l] -= factor * pivot_row[l]
        self.basis[i] = j
        self.pivots += 1

    def solve(self, max_pivots=None):
        while True:
            j = self.entering()
            if j is None:
                return
            i = self.leaving(j)
            if i is None:
                # cannot happen in phase one: the objective is bounded below by 0
                raise ArithmeticError("Phase-one program reported unbounded.")
            self.pivot(i, j)
            if max_pivots is not None and self.pivots >= max_pivots:
                raise ArithmeticError("Simplex exceeded %i pivots." % max_pivots)

    def primal(self) -> List[Fraction]:
        x = [ZERO] * self.n
        for i, j in enumerate(self.basis):
            if j < self.n:
                x[j] = self.rhs[i]
        return x

    def multipliers(self) -> List[Fraction]:
        """Simplex multipliers of the original (unnegated) rows."""
        w = [ONE - self.reduced[self.n + i] for i in range(self.m)]
        return [self.signs[i] * w[i] for i in range(self.m)]


def solve_feasibility(columns, rhs, logger=None, max_pivots=None) -> FeasibilityResult:
    """
    Finds x >= 0 with sum_j x_j columns[j] = rhs, or proves there is none.

    Args:
        columns: (list of list of Fraction) the columns of A.
        rhs: (list of Fraction) b.
        logger: (logging.Logger) logger, module logger if None.
        max_pivots: (int) safety cap on the number of pivots, no cap if None.

    Returns:
        (FeasibilityResult) the solution x when feasible, otherwise a vector y
        with y.A_j <= 0 for all j and y.b > 0.
    """
    if logger is None:
        logger = logging.getLogger(__name__)

    tableau = SimplexTableau(columns, rhs)
    tableau.solve(max_pivots)
    logger.debug("Phase one ended after %i pivots with objective %s" % (tableau.pivots, tableau.objective))

    if tableau.objective == 0:
        return FeasibilityResult(True, solution=tableau.primal(), pivots=tableau.pivots)
    return FeasibilityResult(False, farkas=tableau.multipliers(), pivots=tableau.pivots)


def solve_square(matrix, rhs) -> List[Fraction]:
    """Solves a nonsingular square system exactly by Gauss-Jordan elimination."""
    size = len(matrix)
    rows = [[Fraction(a) for a in matrix[i]] + [Fraction(rhs[i])] for i in range(size)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            raise ArithmeticError("Singular system.")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        value = rows[col][col]
        rows[col] = [a / value for a in rows[col]]
        for r in range(size):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return [rows[i][size] for i in range(size)]
