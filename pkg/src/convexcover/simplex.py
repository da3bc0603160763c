"""Dense two-phase primal simplex for tiny linear programs.

Solves ``maximize c.x  subject to  A x <= b`` with sign-unrestricted x.
Problem sizes in this library are a handful of variables and constraints,
so a plain dense tableau with Bland's anti-cycling rule is both simple and
fast enough.  Free variables are split into positive and negative parts;
rows with negative right-hand sides get artificial variables and a phase-1
feasibility solve.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

_RC_TOL = 1e-9  # reduced-cost optimality tolerance
_PIV_TOL = 1e-11  # smallest acceptable pivot magnitude
_MAX_PIVOTS = 20000  # Bland's rule terminates; this guards float pathologies


class LPResult(NamedTuple):
    status: str
    x: Optional[np.ndarray]
    value: float


def _bland_iterate(T, basis, cost):
    """Run primal simplex pivots on tableau ``T`` (last column = rhs).

    Entering variable: lowest index with reduced cost below -_RC_TOL
    (maximization).  Leaving row: minimum ratio, ties broken by lowest
    basic-variable index.  Returns "optimal" or "unbounded".
    """
    m = T.shape[0]
    for _ in range(_MAX_PIVOTS):
        cb = cost[basis]
        # reduced costs z_j - c_j, recomputed from scratch; sizes are tiny
        # and this avoids any accumulation drift in the objective row.
        zrow = cb @ T[:, :-1] - cost
        entering = -1
        for j in range(T.shape[1] - 1):
            if zrow[j] < -_RC_TOL:
                entering = j
                break
        if entering < 0:
            return OPTIMAL
        col = T[:, entering]
        rhs = T[:, -1]
        best_row = -1
        best_ratio = np.inf
        for i in range(m):
            if col[i] > _PIV_TOL:
                ratio = rhs[i] / col[i]
                if ratio < best_ratio - 1e-12 or (
                    ratio <= best_ratio + 1e-12
                    and (best_row < 0 or basis[i] < basis[best_row])
                ):
                    if ratio < best_ratio:
                        best_ratio = ratio
                    best_row = i
        if best_row < 0:
            return UNBOUNDED
        # pivot
        T[best_row] /= col[best_row]
        for i in range(m):
            if i != best_row and T[i, entering] != 0.0:
                T[i] -= T[i, entering] * T[best_row]
        basis[best_row] = entering
    raise RuntimeError("simplex exceeded pivot limit (numerical cycling)")


def solve_lp(c, A, b) -> LPResult:
    """Maximize ``c.x`` subject to ``A x <= b`` over unconstrained-sign x."""
    c = np.asarray(c, dtype=float)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    n = c.size
    if A.size == 0:
        A = A.reshape(0, n)
    m = A.shape[0]
    if A.shape != (m, n) or b.shape != (m,):
        raise ValueError("inconsistent LP dimensions")

    if m == 0:
        if np.any(np.abs(c) > 0.0):
            return LPResult(UNBOUNDED, None, np.inf)
        return LPResult(OPTIMAL, np.zeros(n), 0.0)

    # Standard form: x = u - v with u, v >= 0, slack s >= 0.
    # Rows with b_i < 0 are negated (slack coefficient becomes -1) and get
    # an artificial variable so phase 1 starts from an identity basis.
    ncols = 2 * n + m
    neg = b < 0
    n_art = int(neg.sum())
    total = ncols + n_art
    T = np.zeros((m, total + 1))
    T[:, :n] = A
    T[:, n : 2 * n] = -A
    T[np.arange(m), 2 * n + np.arange(m)] = 1.0
    T[:, -1] = b
    T[neg] *= -1.0

    basis = np.empty(m, dtype=int)
    art_col = ncols
    for i in range(m):
        if neg[i]:
            T[i, art_col] = 1.0
            basis[i] = art_col
            art_col += 1
        else:
            basis[i] = 2 * n + i

    if n_art > 0:
        phase1_cost = np.zeros(total)
        phase1_cost[ncols:] = -1.0  # maximize -(sum of artificials)
        status = _bland_iterate(T, basis, phase1_cost)
        if status != OPTIMAL:
            raise RuntimeError("phase-1 simplex reported unbounded")
        w = phase1_cost[basis] @ T[:, -1]
        if w < -1e-8:
            return LPResult(INFEASIBLE, None, -np.inf)
        # Drive leftover artificials out of the basis; a row with no real
        # pivot candidate is redundant and can be dropped.
        keep = np.ones(m, dtype=bool)
        for i in range(m):
            if basis[i] >= ncols:
                pivot_col = -1
                for j in range(ncols):
                    if abs(T[i, j]) > _PIV_TOL:
                        pivot_col = j
                        break
                if pivot_col < 0:
                    keep[i] = False
                    continue
                T[i] /= T[i, pivot_col]
                for k in range(m):
                    if k != i and T[k, pivot_col] != 0.0:
                        T[k] -= T[k, pivot_col] * T[i]
                basis[i] = pivot_col
        T = np.hstack([T[keep][:, :ncols], T[keep][:, -1:]])
        basis = basis[keep]
    else:
        T = np.hstack([T[:, :ncols], T[:, -1:]])

    cost = np.zeros(ncols)
    cost[:n] = c
    cost[n : 2 * n] = -c
    status = _bland_iterate(T, basis, cost)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, None, np.inf)

    full = np.zeros(ncols)
    full[basis] = T[:, -1]
    x = full[:n] - full[n : 2 * n]
    return LPResult(OPTIMAL, x, float(c @ x))
