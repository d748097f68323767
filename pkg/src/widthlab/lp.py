"""Dense two-phase simplex over the rationals.

Small problems only (a few dozen variables, a few hundred rows).  Bland's
rule is used throughout, so the method terminates without cycling and the
result is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple | None = None
    fun: Fraction | None = None

    @property
    def success(self):
        return self.status == OPTIMAL


class _Tableau:
    def __init__(self, rows, basis, ncols):
        self.rows = rows          # each row: ncols coefficients + rhs
        self.basis = basis
        self.ncols = ncols

    def pivot(self, r, c):
        rows = self.rows
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow = [v * inv for v in prow]
            rows[r] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        self.basis[r] = c

    def reduced_costs(self, cost):
        z = list(cost) + [Fraction(0)]
        for i, row in enumerate(self.rows):
            cb = cost[self.basis[i]]
            if cb:
                for j, v in enumerate(row):
                    if v:
                        z[j] -= cb * v
        return z

    def run(self, cost, allowed):
        """Minimise ``cost . z`` over the tableau; returns False if unbounded."""
        z = self.reduced_costs(cost)
        while True:
            enter = next((j for j in allowed if z[j] < 0), None)
            if enter is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            r = best[1]
            self.pivot(r, enter)
            f = z[enter]
            prow = self.rows[r]
            for j, v in enumerate(prow):
                if v:
                    z[j] -= f * v


def linprog(c, A_ub=(), b_ub=(), A_eq=(), b_eq=(), maximize=False):
    """Optimise ``c . x`` subject to ``A_ub x <= b_ub`` and ``A_eq x == b_eq``.

    All variables are free.  Inputs are converted to :class:`Fraction`.
    """
    F = Fraction
    c = [F(v) for v in c]
    n = len(c)
    ub = [([F(v) for v in row], F(b)) for row, b in zip(A_ub, b_ub)]
    eq = [([F(v) for v in row], F(b)) for row, b in zip(A_eq, b_eq)]
    m_ub, m = len(ub), len(ub) + len(eq)
    # columns: x+ (n) | x- (n) | slacks (m_ub) | artificials (m)
    n_struct = 2 * n + m_ub
    ncols = n_struct + m
    rows = []
    for i, (a, b) in enumerate(ub + eq):
        row = [F(0)] * (ncols + 1)
        row[:n] = a
        row[n:2 * n] = [-v for v in a]
        if i < m_ub:
            row[2 * n + i] = F(1)
        row[-1] = b
        if b < 0:
            row = [-v for v in row]
        row[n_struct + i] = F(1)
        rows.append(row)
    tab = _Tableau(rows, [n_struct + i for i in range(m)], ncols)

    phase1 = [F(0)] * n_struct + [F(1)] * m
    tab.run(phase1, range(ncols))
    if sum(row[-1] for i, row in enumerate(tab.rows) if tab.basis[i] >= n_struct) > 0:
        return LPResult(INFEASIBLE)
    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n_struct:
            j = next((j for j in range(n_struct) if tab.rows[i][j]), None)
            if j is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, j)
        i += 1

    sgn = -1 if maximize else 1
    cost = [sgn * v for v in c] + [-sgn * v for v in c] + [F(0)] * (m_ub + m)
    if not tab.run(cost, range(n_struct)):
        return LPResult(UNBOUNDED)
    z = [F(0)] * ncols
    for i, row in enumerate(tab.rows):
        z[tab.basis[i]] = row[-1]
    x = tuple(z[k] - z[n + k] for k in range(n))
    fun = sum(ci * xi for ci, xi in zip(c, x))
    return LPResult(OPTIMAL, x, fun)
