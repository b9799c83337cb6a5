"""Exact linear programming and linear algebra over the rationals.

The solver is a dense two-phase tableau simplex with Bland's anti-cycling
rule, operating entirely on ``fractions.Fraction``.  Problem sizes here are
tiny (a dozen rows, a few dozen columns), so clarity wins over speed:
reduced costs are recomputed from the cost vector and current basis each
iteration instead of being carried in an objective row.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "LPUnboundedError",
    "LPInfeasibleError",
    "simplex_maximize",
    "exact_rank",
    "solve_linear_system",
]


class LPUnboundedError(ArithmeticError):
    """The LP objective can be made arbitrarily large."""


class LPInfeasibleError(ArithmeticError):
    """The LP constraint set is empty."""


def _pivot(tableau, basis, row, col):
    piv = tableau[row][col]
    inv = Fraction(1) / piv
    tableau[row] = [v * inv for v in tableau[row]]
    for i, r in enumerate(tableau):
        if i != row and r[col] != 0:
            factor = r[col]
            pivot_row = tableau[row]
            tableau[i] = [v - factor * pv for v, pv in zip(r, pivot_row)]
    basis[row] = col


def _bland_run(tableau, basis, cost):
    """Maximize cost over the tableau in place; Bland's rule throughout.

    tableau rows are [coefficients..., rhs] with rhs >= 0 maintained.
    Returns when no reduced cost is positive; raises LPUnboundedError if an
    improving column has no positive entry.
    """
    ncols = len(cost)
    while True:
        # Reduced costs r_j = c_j - c_B . column_j (tableau is B^-1 A).
        basic_cost = [cost[b] for b in basis]
        entering = -1
        for j in range(ncols):
            if j in basis:
                continue
            rj = cost[j] - sum(cb * tableau[i][j] for i, cb in enumerate(basic_cost) if tableau[i][j])
            if rj > 0:
                entering = j
                break
        if entering < 0:
            return
        leaving = -1
        best_ratio = None
        for i, r in enumerate(tableau):
            if r[entering] > 0:
                ratio = r[-1] / r[entering]
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving < 0:
            raise LPUnboundedError("improving direction with no binding constraint")
        _pivot(tableau, basis, leaving, entering)


def simplex_maximize(objective, constraints, rhs):
    """Solve  max objective . x  subject to  constraints @ x = rhs,  x >= 0.

    All inputs are sequences of Fractions (or ints).  Returns
    ``(value, x)`` with x a list of Fractions.  Raises LPInfeasibleError or
    LPUnboundedError accordingly.  Deterministic: Bland's rule with the
    given variable ordering.
    """
    m = len(constraints)
    n = len(objective)
    objective = [Fraction(c) for c in objective]
    if m == 0:
        if any(c > 0 for c in objective):
            raise LPUnboundedError("no constraints and a positive objective entry")
        return Fraction(0), [Fraction(0)] * n

    tableau = []
    for i in range(m):
        row = [Fraction(v) for v in constraints[i]]
        if len(row) != n:
            raise ValueError("constraint row length does not match objective")
        b = Fraction(rhs[i])
        if b < 0:
            row = [-v for v in row]
            b = -b
        tableau.append(row + [b])

    # Phase 1: artificial basis, drive sum of artificials to zero.
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tableau[i] = tableau[i][:-1] + art + [tableau[i][-1]]
    basis = list(range(n, n + m))
    phase1_cost = [Fraction(0)] * n + [Fraction(-1)] * m
    _bland_run(tableau, basis, phase1_cost)
    value1 = sum(phase1_cost[b] * tableau[i][-1] for i, b in enumerate(basis))
    if value1 != 0:
        raise LPInfeasibleError("artificial variables cannot be driven to zero")

    # Remove artificials from the basis (pivot out, or drop redundant rows).
    drop_rows = []
    for i in range(m):
        if basis[i] >= n:
            pivot_col = next((j for j in range(n) if tableau[i][j] != 0), None)
            if pivot_col is None:
                drop_rows.append(i)
            else:
                _pivot(tableau, basis, i, pivot_col)
    for i in sorted(drop_rows, reverse=True):
        del tableau[i]
        del basis[i]
    tableau = [row[:n] + [row[-1]] for row in tableau]

    phase2_cost = objective
    _bland_run(tableau, basis, phase2_cost)

    x = [Fraction(0)] * n
    for i, b in enumerate(basis):
        x[b] = tableau[i][-1]
    value = sum(objective[j] * x[j] for j in range(n))
    return value, x


def exact_rank(rows) -> int:
    """Rank over Q of a list of Fraction rows (Gaussian elimination)."""
    work = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    for col in range(ncols):
        pivot_row = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inv = Fraction(1) / work[rank][col]
        work[rank] = [v * inv for v in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                factor = work[i][col]
                work[i] = [v - factor * p for v, p in zip(work[i], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def solve_linear_system(matrix, rhs):
    """Solve  matrix @ x = rhs  exactly.

    Returns ``(x, rank)`` where x is the unique solution when the system is
    determined (rank == number of unknowns) and consistent; x is None when
    the solution is not unique (rank deficit).  Raises ArithmeticError on an
    inconsistent system.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    work = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    pivots = []
    rank = 0
    for col in range(n):
        pivot_row = next((i for i in range(rank, m) if work[i][col] != 0), None)
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inv = Fraction(1) / work[rank][col]
        work[rank] = [v * inv for v in work[rank]]
        for i in range(m):
            if i != rank and work[i][col] != 0:
                factor = work[i][col]
                work[i] = [v - factor * p for v, p in zip(work[i], work[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, m):
        if work[i][-1] != 0:
            raise ArithmeticError("inconsistent linear system")
    if rank < n:
        return None, rank
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = work[i][-1]
    return x, rank
