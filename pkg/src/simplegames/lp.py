"""Exact-rational primal simplex for small dense linear programs.

Solves  max c.x  subject to  A x <= b, x >= 0  with every b_i >= 0, so the
all-slack basis is feasible and a single phase suffices.  Bland's rule
guarantees termination.  Everything is fractions.Fraction; no floating
point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass
class LPResult:
    value: Fraction
    x: list[Fraction]
    duals: list[Fraction]


def simplex_max(c, A, b) -> LPResult:
    """Tableau simplex.  ``A`` is a list of m rows of length n, ``b`` has
    nonnegative entries, ``c`` has length n.  Returns the optimum, a
    maximizer, and the dual values (one per constraint row)."""
    m = len(A)
    n = len(c)
    if any(Fraction(v) < 0 for v in b):
        raise ValueError("requires b >= 0")
    zero = Fraction(0)
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        row.extend(Fraction(1) if k == i else zero for k in range(m))
        row.append(Fraction(b[i]))
        rows.append(row)
    # reduced-cost row: slack basis has zero objective
    cost = [-Fraction(v) for v in c] + [zero] * (m + 1)
    basis = [n + i for i in range(m)]
    ncols = n + m

    while True:
        enter = -1
        for j in range(ncols):
            if cost[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            raise ArithmeticError("objective unbounded")
        piv = rows[leave][enter]
        prow = rows[leave]
        if piv != 1:
            for j in range(ncols + 1):
                prow[j] /= piv
        for i in range(m):
            if i == leave:
                continue
            f = rows[i][enter]
            if f:
                row = rows[i]
                for j in range(ncols + 1):
                    if prow[j]:
                        row[j] -= f * prow[j]
        f = cost[enter]
        if f:
            for j in range(ncols + 1):
                if prow[j]:
                    cost[j] -= f * prow[j]
        basis[leave] = enter

    x = [zero] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = rows[i][-1]
    duals = [cost[n + i] for i in range(m)]
    return LPResult(value=cost[-1], x=x, duals=duals)
