"""Dense-tableau primal simplex with Bland's anticycling rule.

Solves  max c.x  s.t.  A x <= b,  x >= 0  with b >= 0, so the slack basis is
feasible from the start and no phase one is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TOL = 1e-12


class SimplexError(RuntimeError):
    pass


class UnboundedError(SimplexError):
    pass


@dataclass
class SimplexResult:
    x: np.ndarray
    value: float
    pivots: int
    basis: np.ndarray
    objective_trace: list[float]


def solve(c, A, b, tol: float = TOL, max_pivots: int | None = None) -> SimplexResult:
    c = np.asarray(c, dtype=np.float64)
    A = np.asarray(A, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    m, n = A.shape
    if c.shape != (n,) or b.shape != (m,):
        raise ValueError("shape mismatch between c, A and b")
    if np.any(b < 0):
        raise ValueError("right-hand side must be nonnegative")
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b)) and np.all(np.isfinite(c))):
        raise ValueError("non-finite coefficient")

    # rows 0..m-1: [A | I | b]; last row: reduced costs [c | 0 | -z]
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :n] = c
    basis = np.arange(n, n + m)
    if max_pivots is None:
        max_pivots = 50 * (n + m) + 100

    trace = [0.0]
    pivots = 0
    while True:
        reduced = T[m, :-1]
        candidates = np.flatnonzero(reduced > tol)
        if candidates.size == 0:
            break
        j = int(candidates[0])
        col = T[:m, j]
        rows = np.flatnonzero(col > tol)
        if rows.size == 0:
            raise UnboundedError(f"objective unbounded along column {j}")
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        tied = rows[ratios <= best + tol * max(1.0, abs(best))]
        i = int(tied[np.argmin(basis[tied])])

        T[i] /= T[i, j]
        for r in range(m + 1):
            if r != i and T[r, j] != 0.0:
                T[r] -= T[r, j] * T[i]
        T[:m, -1] = np.maximum(T[:m, -1], 0.0)
        basis[i] = j
        pivots += 1
        trace.append(-T[m, -1])
        if pivots > max_pivots:
            raise SimplexError(f"no convergence after {pivots} pivots")

    x = np.zeros(n + m)
    x[basis] = T[:m, -1]
    return SimplexResult(x[:n], float(c @ x[:n]), pivots, basis.copy(), trace)
