"""Phase-1 simplex for linear feasibility: find x >= 0 with A x = b.

Dense-tableau implementation with Bland's anti-cycling rule, plus an exact
twin over rationals for adjudicating near-boundary cases.  Only phase 1 is
needed: the minimum of the artificial-variable sum is zero exactly when the
system is feasible, and the final basic solution is the certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import OracleError

FEASIBILITY_TOL = 1e-9
_PIVOT_TOL = 1e-10


@dataclass(frozen=True)
class Phase1Result:
    feasible: bool
    x: np.ndarray
    objective: float
    iterations: int


def solve_phase1(
    a: np.ndarray,
    b: np.ndarray,
    *,
    tol: float = FEASIBILITY_TOL,
    max_iter: int | None = None,
) -> Phase1Result:
    """Minimize the artificial-variable sum for A x = b, x >= 0.

    Bland's rule (lowest eligible index for both the entering column and
    the leaving basic variable) guarantees termination; the iteration cap
    is a safety net reported as oracle non-convergence, distinct from an
    infeasible verdict.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    m, n = a.shape
    if b.shape != (m,):
        raise ValueError(f"rhs shape {b.shape} does not match {m} rows")

    flip = b < 0
    tableau = np.empty((m, n + m + 1))
    tableau[:, :n] = np.where(flip[:, None], -a, a)
    tableau[:, n : n + m] = np.eye(m)
    tableau[:, -1] = np.where(flip, -b, b)
    basis = np.arange(n, n + m)

    # reduced costs for min sum(artificials) with the artificial basis
    obj = np.zeros(n + m + 1)
    obj[:n] = -tableau[:, :n].sum(axis=0)
    obj[-1] = -tableau[:, -1].sum()

    cap = max_iter if max_iter is not None else 200 * (m + n + 10)
    iterations = 0
    while True:
        negative = np.flatnonzero(obj[: n + m] < -tol)
        if negative.size == 0:
            break
        col = int(negative[0])
        column = tableau[:, col]
        eligible = np.flatnonzero(column > _PIVOT_TOL)
        if eligible.size == 0:
            raise OracleError("phase-1 objective unbounded below; numerical breakdown")
        ratios = tableau[eligible, -1] / column[eligible]
        best = ratios.min()
        ties = eligible[ratios <= best + 1e-12]
        row = int(ties[np.argmin(basis[ties])])

        tableau[row] /= tableau[row, col]
        factors = tableau[:, col].copy()
        factors[row] = 0.0
        tableau -= np.outer(factors, tableau[row])
        obj = obj - obj[col] * tableau[row]
        basis[row] = col

        iterations += 1
        if iterations > cap:
            raise OracleError(f"phase-1 simplex exceeded {cap} iterations")

    objective = -obj[-1]
    x = np.zeros(n + m)
    x[basis] = tableau[:, -1]
    return Phase1Result(bool(objective <= tol), x[:n].copy(), float(objective), iterations)


def solve_phase1_exact(
    a: Sequence[Sequence[Fraction | int | float]],
    b: Sequence[Fraction | int | float],
    *,
    max_iter: int | None = None,
) -> Phase1Result:
    """Same algorithm over exact rationals; the verdict carries no rounding.

    Intended for small systems (certificate columns up to 2^6); floats in
    the input are converted exactly.
    """
    rows = [[Fraction(v) for v in row] for row in a]
    rhs = [Fraction(v) for v in b]
    m = len(rows)
    n = len(rows[0]) if m else 0
    if len(rhs) != m:
        raise ValueError("rhs length does not match row count")

    tableau = []
    for i in range(m):
        sign = -1 if rhs[i] < 0 else 1
        row = [sign * v for v in rows[i]]
        row += [Fraction(1) if j == i else Fraction(0) for j in range(m)]
        row.append(sign * rhs[i])
        tableau.append(row)
    basis = list(range(n, n + m))

    width = n + m + 1
    obj = [Fraction(0)] * width
    for j in range(n):
        obj[j] = -sum(tableau[i][j] for i in range(m))
    obj[-1] = -sum(tableau[i][-1] for i in range(m))

    cap = max_iter if max_iter is not None else 500 * (m + n + 10)
    iterations = 0
    while True:
        col = next((j for j in range(n + m) if obj[j] < 0), None)
        if col is None:
            break
        row_choice = None
        best_ratio = None
        for i in range(m):
            if tableau[i][col] > 0:
                ratio = tableau[i][-1] / tableau[i][col]
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[row_choice])
                ):
                    best_ratio = ratio
                    row_choice = i
        if row_choice is None:
            raise OracleError("exact phase-1 objective unbounded below")

        pivot = tableau[row_choice][col]
        tableau[row_choice] = [v / pivot for v in tableau[row_choice]]
        pivot_row = tableau[row_choice]
        for i in range(m):
            if i != row_choice and tableau[i][col] != 0:
                factor = tableau[i][col]
                tableau[i] = [v - factor * pv for v, pv in zip(tableau[i], pivot_row)]
        if obj[col] != 0:
            factor = obj[col]
            obj = [v - factor * pv for v, pv in zip(obj, pivot_row)]
        basis[row_choice] = col

        iterations += 1
        if iterations > cap:
            raise OracleError(f"exact phase-1 simplex exceeded {cap} iterations")

    objective = -obj[-1]
    x = [Fraction(0)] * (n + m)
    for i, var in enumerate(basis):
        x[var] = tableau[i][-1]
    xs = np.array([float(v) for v in x[:n]])
    return Phase1Result(objective == 0, xs, float(objective), iterations)
