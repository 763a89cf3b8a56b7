"""Exact rational feasibility for A x = b, x >= 0.

Phase one of the tableau simplex method over ``Fraction``: artificial
variables start in the basis and their sum is minimized, pivoting by Bland's
rule so the method terminates on degenerate problems. A feasible answer is a
basic solution, so its nonzero entries belong to linearly independent
columns of A.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from fractions import Fraction

from kronspec.shared.errors import InputError

logger = logging.getLogger(__name__)

Tableau = list[list[Fraction]]


def _pivot(tableau: Tableau, objective: list[Fraction], row: int, col: int) -> None:
    pivot_row = tableau[row]
    factor = pivot_row[col]
    pivot_row[:] = [v / factor for v in pivot_row]
    for other in (*tableau[:row], *tableau[row + 1:], objective):
        coef = other[col]
        if coef:
            other[:] = [v - coef * p for v, p in zip(other, pivot_row)]


def _entering(objective: list[Fraction], width: int) -> int | None:
    """Bland's rule: smallest column index with negative reduced cost."""
    for j in range(width):
        if objective[j] < 0:
            return j
    return None


def _leaving(tableau: Tableau, basis: list[int], col: int) -> int:
    best_row, best_ratio = -1, None
    for i, row in enumerate(tableau):
        if row[col] > 0:
            ratio = row[-1] / row[col]
            if best_ratio is None or ratio < best_ratio or (ratio == best_ratio and basis[i] < basis[best_row]):
                best_row, best_ratio = i, ratio
    return best_row


def exact_feasible(
    matrix: Sequence[Sequence[Fraction | int]], rhs: Sequence[Fraction | int]
) -> tuple[Fraction, ...] | None:
    """A basic nonnegative solution of ``matrix @ x == rhs``, or None if none exists.

    Args:
        matrix: r x n coefficient rows
        rhs: Right-hand side of length r

    Returns:
        Exact solution of length n, or None when infeasible.
    """
    rows = len(matrix)
    if rows != len(rhs):
        raise InputError(f"{rows} constraint rows but {len(rhs)} right-hand sides")
    width = len(matrix[0]) if rows else 0
    if any(len(row) != width for row in matrix):
        raise InputError("constraint rows have different lengths")

    tableau: Tableau = []
    for i, (row, b) in enumerate(zip(matrix, rhs)):
        sign = -1 if b < 0 else 1
        artificial = [Fraction(0)] * rows
        artificial[i] = Fraction(1)
        tableau.append([Fraction(sign * v) for v in row] + artificial + [Fraction(sign * b)])
    basis = [width + i for i in range(rows)]
    total = width + rows
    objective = [-sum((r[j] for r in tableau), Fraction(0)) for j in range(width)]
    objective += [Fraction(0)] * rows + [-sum((r[-1] for r in tableau), Fraction(0))]

    pivots = 0
    while (col := _entering(objective, total)) is not None:
        row = _leaving(tableau, basis, col)
        if row < 0:
            # phase one is bounded below by zero; no column can be unbounded
            break
        _pivot(tableau, objective, row, col)
        basis[row] = col
        pivots += 1

    if objective[-1] != 0:
        logger.debug(f"Exact LP infeasible after {pivots} pivots (residual {-objective[-1]})")
        return None
    solution = [Fraction(0)] * width
    for i, j in enumerate(basis):
        if j < width:
            solution[j] = tableau[i][-1]
    logger.debug(f"Exact LP feasible after {pivots} pivots")
    return tuple(solution)
