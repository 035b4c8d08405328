"""Dense two-phase simplex over exact rationals.

Minimizes c.x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0, with all
data and arithmetic in fractions, so the optimum is certificate-quality.
Bland's rule guarantees termination.  Intended for the small tableaus
produced by the weight-minimization row generation; nothing here is
tuned for large problems.
"""

from __future__ import annotations

from fractions import Fraction

from .core import GraphShareError

ZERO = Fraction(0)
ONE = Fraction(1)


class LPInfeasibleError(GraphShareError):
    """No point satisfies all constraints."""


class LPUnboundedError(GraphShareError):
    """The objective decreases without bound over the feasible region."""


def _pivot(rows, cost, basis, pivot_row, pivot_col):
    row = rows[pivot_row]
    inv = ONE / row[pivot_col]
    rows[pivot_row] = row = [value * inv for value in row]
    for r, other in enumerate(rows):
        if r != pivot_row and other[pivot_col]:
            factor = other[pivot_col]
            rows[r] = [a - factor * b for a, b in zip(other, row)]
    if cost[pivot_col]:
        factor = cost[pivot_col]
        for j, value in enumerate(row):
            cost[j] -= factor * value
    basis[pivot_row] = pivot_col


def _optimize(rows, cost, basis, allowed):
    """Run Bland-rule pivots until no allowed column improves the cost."""
    while True:
        pivot_col = None
        for j in range(len(cost) - 1):
            if allowed[j] and cost[j] < ZERO:
                pivot_col = j
                break
        if pivot_col is None:
            return
        pivot_row = None
        best_ratio = None
        for i, row in enumerate(rows):
            coeff = row[pivot_col]
            if coeff > ZERO:
                ratio = row[-1] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[pivot_row])
                ):
                    pivot_row = i
                    best_ratio = ratio
        if pivot_row is None:
            raise LPUnboundedError("no blocking row for an improving column")
        _pivot(rows, cost, basis, pivot_row, pivot_col)


def solve_lp(objective, a_ub, b_ub, a_eq, b_eq):
    """Exact minimum of objective.x over the given system, x >= 0.

    Returns (x, objective value) with every entry a Fraction.  Raises
    LPInfeasibleError or LPUnboundedError as appropriate.
    """
    nvars = len(objective)
    c = [Fraction(v) for v in objective]
    n_ub = len(a_ub)
    n_eq = len(a_eq)
    ncols = nvars + n_ub  # structural then one slack per inequality
    rows: list[list[Fraction]] = []
    needs_artificial: list[bool] = []
    for i in range(n_ub):
        row = [Fraction(v) for v in a_ub[i]] + [ZERO] * n_ub + [Fraction(b_ub[i])]
        row[nvars + i] = ONE
        if row[-1] < ZERO:
            row = [-v for v in row]
            needs_artificial.append(True)
        else:
            needs_artificial.append(False)
        rows.append(row)
    for i in range(n_eq):
        row = [Fraction(v) for v in a_eq[i]] + [ZERO] * n_ub + [Fraction(b_eq[i])]
        if row[-1] < ZERO:
            row = [-v for v in row]
        needs_artificial.append(True)
        rows.append(row)
    basis = [-1] * len(rows)
    art_cols: list[int] = []
    for i, needed in enumerate(needs_artificial):
        if needed:
            col = ncols + len(art_cols)
            art_cols.append(col)
            basis[i] = col
        else:
            basis[i] = nvars + i
    total_cols = ncols + len(art_cols)
    for i, row in enumerate(rows):
        rhs = row.pop()
        row.extend([ZERO] * len(art_cols))
        row.append(rhs)
        if basis[i] >= ncols:
            row[basis[i]] = ONE
        rows[i] = row

    if art_cols:
        art_set = frozenset(art_cols)
        cost = [ONE if j in art_set else ZERO for j in range(total_cols)] + [ZERO]
        for i, b in enumerate(basis):
            if b in art_set:
                cost = [a - r for a, r in zip(cost, rows[i])]
        allowed = [True] * total_cols
        _optimize(rows, cost, basis, allowed)
        if -cost[-1] > ZERO:
            raise LPInfeasibleError("phase one ended with positive infeasibility")
        # drive leftover artificials out of the basis or drop their rows
        drop: list[int] = []
        for i in range(len(rows)):
            if basis[i] in art_set:
                pivot_col = next(
                    (j for j in range(ncols) if rows[i][j] != ZERO), None
                )
                if pivot_col is None:
                    drop.append(i)
                else:
                    _pivot(rows, cost, basis, i, pivot_col)
        for i in reversed(drop):
            rows.pop(i)
            basis.pop(i)

    cost = c + [ZERO] * (total_cols - nvars) + [ZERO]
    for i, b in enumerate(basis):
        if cost[b]:
            factor = cost[b]
            cost = [a - factor * r for a, r in zip(cost, rows[i])]
    allowed = [j < ncols for j in range(total_cols)]
    _optimize(rows, cost, basis, allowed)
    x = [ZERO] * nvars
    for i, b in enumerate(basis):
        if b < nvars:
            x[b] = rows[i][-1]
    return x, -cost[-1]
