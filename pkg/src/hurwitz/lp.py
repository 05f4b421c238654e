"""Exact linear programming over the rationals: two-phase primal simplex
with Bland's rule (terminating, no cycling) and Farkas infeasibility
certificates, all in Fractions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence


class LPError(ValueError):
    pass


@dataclass
class LPResult:
    status: str                        # "optimal" | "infeasible" | "unbounded"
    x: Optional[List[Fraction]]
    objective: Optional[Fraction]
    certificate: Optional[List[Fraction]]   # Farkas vector y when infeasible


def solve_lp(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """maximize c.x subject to A x = b, x >= 0.

    Infeasible outcomes carry y with y.A <= 0 (componentwise) and y.b > 0,
    verified by assertion before returning.
    """
    m, n = len(A), len(c)
    c = [Fraction(v) for v in c]
    A0 = [[Fraction(v) for v in row] for row in A]
    b0 = [Fraction(v) for v in b]
    if any(len(r) != n for r in A0) or len(b0) != m:
        raise LPError("dimension mismatch")
    sign = [1 if b0[i] >= 0 else -1 for i in range(m)]
    rows = [[sign[i] * v for v in A0[i]] for i in range(m)]
    rhs = [sign[i] * b0[i] for i in range(m)]

    # tableau with artificial columns n..n+m-1; last column = rhs
    T = [rows[i] + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]]
         for i in range(m)]
    basis = [n + i for i in range(m)]
    width = n + m

    def pivot(r: int, col: int):
        piv = T[r][col]
        T[r] = [v / piv for v in T[r]]
        for i in range(m):
            if i != r and T[i][col] != 0:
                f = T[i][col]
                T[i] = [a - f * p for a, p in zip(T[i], T[r])]

    def run_simplex(obj: List[Fraction], allowed: int) -> Optional[List[Fraction]]:
        """Maximize obj.x over columns [0, allowed); returns the reduced
        objective row (entry `width` holds minus the optimal value), or
        None when unbounded."""
        z = obj[:] + [Fraction(0)] * (width + 1 - len(obj))
        for i, bi in enumerate(basis):
            if z[bi] != 0:
                f = z[bi]
                z = [a - f * p for a, p in zip(z, T[i])]
        while True:
            col = next((j for j in range(allowed) if z[j] > 0), None)
            if col is None:
                return z
            ratios = [(T[i][width] / T[i][col], basis[i], i)
                      for i in range(m) if T[i][col] > 0]
            if not ratios:
                return None
            _, _, r = min(ratios)    # Bland: least index among min ratios
            pivot(r, col)
            basis[r] = col
            if z[col] != 0:
                f = z[col]
                z = [a - f * p for a, p in zip(z, T[r])]

    # phase 1: maximize -sum(artificials); feasible iff the optimum is 0
    z1 = run_simplex([Fraction(0)] * n + [Fraction(-1)] * m, width)
    assert z1 is not None           # bounded: objective <= 0 always
    if z1[width] != 0:              # -optimum > 0: infeasible
        y = [sign[i] * (1 + z1[n + i]) for i in range(m)]
        yA = [sum(y[i] * A0[i][j] for i in range(m)) for j in range(n)]
        yb = sum(y[i] * b0[i] for i in range(m))
        assert all(v <= 0 for v in yA) and yb > 0, "bad Farkas certificate"
        return LPResult("infeasible", None, None, y)

    # drive leftover artificials out of the basis (degenerate rows)
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                pivot(i, col)
                basis[i] = col
            # else: redundant all-zero row with zero rhs; harmless

    z2 = run_simplex(c, n)
    if z2 is None:
        return LPResult("unbounded", None, None, None)
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = T[i][width]
    for i in range(m):
        assert sum(A0[i][j] * x[j] for j in range(n)) == b0[i], \
            "reported solution infeasible"
    assert all(v >= 0 for v in x)
    return LPResult("optimal", x, sum(ci * xi for ci, xi in zip(c, x)), None)
