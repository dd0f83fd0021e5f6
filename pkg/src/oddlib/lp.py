"""Exact feasibility of two-sided linear inequalities.

Given rows ``lo_i <= a_i . c <= hi_i`` we look for a vector ``c``.  The
problem is attacked through its Farkas alternative

    minimize   b . y
    subject to G^T y = 0,  sum(y) + s = 1,  y, s >= 0

where ``G`` stacks ``a_i`` and ``-a_i`` and ``b`` stacks ``hi_i`` and
``-lo_i``.  This LP is always feasible and bounded.  A negative optimum is
a certificate that no ``c`` exists; otherwise the simplex multipliers of
the ``G^T y = 0`` rows are a solution.  Everything is exact: columns are
scaled to integers and the basis inverse is kept in Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

__all__ = ["feasible_point", "LPStats"]

# consecutive degenerate pivots tolerated before switching to Bland's rule
_DEGENERATE_STREAK = 25


class LPStats:
    """Pivot counters; on infeasibility also the Farkas certificate.

    ``certificate`` maps row index to (upper weight, lower weight) such that
    sum((u - l) * rows[i]) == 0 and sum(u * hi[i] - l * lo[i]) < 0.
    """

    def __init__(self):
        self.pivots = 0
        self.bland_pivots = 0
        self.certificate: Optional[dict[int, tuple[Fraction, Fraction]]] = None


def _scale(row: Sequence[Fraction], lo: Fraction, hi: Fraction):
    d = 1
    for v in row:
        d = lcm(d, v.denominator)
    d = lcm(d, lo.denominator, hi.denominator)
    ints = [int(v * d) for v in row]
    return ints, d, int(lo * d), int(hi * d)


def feasible_point(rows: Sequence[Sequence[Fraction]], lo: Sequence[Fraction],
                   hi: Sequence[Fraction], stats: Optional[LPStats] = None
                   ) -> Optional[list[Fraction]]:
    """Some ``c`` with lo[i] <= rows[i] . c <= hi[i] for all i, or None if none exists."""
    if not rows:
        return []
    n = len(rows[0])
    m = n + 1
    # real columns: 2i is the upper bound of row i, 2i+1 the lower bound
    cols: list[list[int]] = []
    cost: list[int] = []
    for i, (r, l, h) in enumerate(zip(rows, lo, hi)):
        if l > h:
            if stats is not None:
                stats.certificate = {i: (Fraction(1), Fraction(1))}
            return None
        ints, d, li, hi_ = _scale([Fraction(v) for v in r], Fraction(l), Fraction(h))
        cols.append(ints + [d])
        cost.append(hi_)
        cols.append([-v for v in ints] + [d])
        cost.append(-li)
    ncols = len(cols)
    slack = ncols
    # artificial j covers row j (< n); they never re-enter once gone
    basis = [ncols + 1 + j for j in range(n)] + [slack]
    binv = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    xb = [Fraction(0)] * n + [Fraction(1)]

    def column(j: int) -> list[int]:
        if j < ncols:
            return cols[j]
        e = [0] * m
        e[(n if j == slack else j - ncols - 1)] = 1
        return e

    def col_cost(j: int) -> int:
        return cost[j] if j < ncols else 0

    def ftran(col: list[int]) -> list[Fraction]:
        return [sum((b * c for b, c in zip(row, col) if c), Fraction(0)) for row in binv]

    def pivot(r: int, q: int, d: list[Fraction]):
        piv = d[r]
        prow = [v / piv for v in binv[r]]
        theta = xb[r] / piv
        for i in range(m):
            if i == r or not d[i]:
                continue
            f = d[i]
            binv[i] = [a - f * b for a, b in zip(binv[i], prow)]
            xb[i] -= f * theta
        binv[r] = prow
        xb[r] = theta
        basis[r] = q
        if stats is not None:
            stats.pivots += 1

    # drive artificials out with degenerate pivots; leftovers mark redundant rows
    for r in range(n):
        if basis[r] <= slack:
            continue
        row = binv[r]
        for q in range(ncols):
            if q in basis:
                continue
            if sum((a * c for a, c in zip(row, cols[q]) if c), Fraction(0)):
                pivot(r, q, ftran(cols[q]))
                break

    streak = 0
    while True:
        cb = [col_cost(j) for j in basis]
        pi = [sum((c * binv[i][k] for i, c in enumerate(cb) if c), Fraction(0))
              for k in range(m)]
        den = 1
        for v in pi:
            den = lcm(den, v.denominator)
        pint = [int(v * den) for v in pi]
        in_basis = set(basis)
        use_bland = streak >= _DEGENERATE_STREAK
        best_q, best_rc = -1, 0
        for q in range(ncols):
            if q in in_basis:
                continue
            col = cols[q]
            rc = cost[q] * den - sum(p * c for p, c in zip(pint, col))
            if rc < 0:
                if use_bland:
                    best_q = q
                    break
                # compare reduced costs per unit of the normalising row
                score = Fraction(rc, col[-1])
                if best_q < 0 or score < best_rc:
                    best_q, best_rc = q, score
        if best_q < 0:
            objective = sum(Fraction(c) * v for c, v in zip(cb, xb))
            if objective < 0:
                if stats is not None:
                    cert: dict[int, list[Fraction]] = {}
                    for j, v in zip(basis, xb):
                        if j < ncols and v:
                            w = cert.setdefault(j // 2, [Fraction(0), Fraction(0)])
                            w[j % 2] += v * cols[j][-1]
                    stats.certificate = {i: (u, l) for i, (u, l) in cert.items()}
                return None
            return pi[:n]
        d = ftran(column(best_q))
        leave, best_ratio = -1, None
        for i in range(m):
            if d[i] > 0:
                ratio = xb[i] / d[i]
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[leave])):
                    leave, best_ratio = i, ratio
        if leave < 0:
            raise ArithmeticError("normalised Farkas LP cannot be unbounded")
        if best_ratio == 0:
            streak += 1
            if use_bland and stats is not None:
                stats.bland_pivots += 1
        else:
            streak = 0
        pivot(leave, best_q, d)
