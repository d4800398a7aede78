"""Dense two-phase tableau simplex.

Solves ``maximize c^T x  s.t.  G x <= h`` where each variable is either free
or nonnegative. Free variables are split as ``x = x+ - x-``. Pricing is
Dantzig (largest reduced cost) until too many degenerate pivots have been
taken, after which Bland's rule is used for the rest of the phase.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalStall, ValidationError

FEAS_TOL = 1e-9
TIGHT_TOL = 1e-8
_PIVOT_TOL = 1e-11
_COST_TOL = 1e-11


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LpProblem:
    """maximize ``objective @ x`` subject to ``constraint_matrix @ x <= rhs``.

    ``nonnegative`` flags variables constrained to ``x_j >= 0``; the rest are
    free. By default all variables are free.
    """

    objective: np.ndarray
    constraint_matrix: np.ndarray
    rhs: np.ndarray
    nonnegative: np.ndarray = None

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float).reshape(-1)
        G = np.asarray(self.constraint_matrix, dtype=float)
        h = np.asarray(self.rhs, dtype=float).reshape(-1)
        if G.ndim != 2:
            raise ValidationError("constraint_matrix must be 2-D")
        k, n = G.shape
        if k < 1 or n < 1:
            raise ValidationError("LP needs at least one row and one variable")
        if c.shape != (n,) or h.shape != (k,):
            raise ValidationError(
                f"shape mismatch: G is {G.shape}, c has {c.size}, h has {h.size}"
            )
        if not (np.all(np.isfinite(c)) and np.all(np.isfinite(G)) and np.all(np.isfinite(h))):
            raise ValidationError("LP data must be finite")
        if self.nonnegative is None:
            nn = np.zeros(n, dtype=bool)
        else:
            nn = np.asarray(self.nonnegative, dtype=bool).reshape(-1)
            if nn.shape != (n,):
                raise ValidationError("nonnegative flags must have one entry per variable")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "constraint_matrix", G)
        object.__setattr__(self, "rhs", h)
        object.__setattr__(self, "nonnegative", nn)

    @property
    def num_rows(self) -> int:
        return self.constraint_matrix.shape[0]

    @property
    def num_vars(self) -> int:
        return self.constraint_matrix.shape[1]


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    optimum: float = float("nan")
    point: np.ndarray | None = None
    tight_rows: tuple[int, ...] = ()
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


@dataclass
class _Tableau:
    # rows 0..k-1 are constraints, row k is the reduced-cost row; last column is rhs
    T: np.ndarray
    basis: list[int]
    iterations: int = 0
    cap: int = 0
    degenerate_limit: int = 0
    degenerate: int = field(default=0)

    def pivot(self, r: int, q: int) -> None:
        T = self.T
        T[r] /= T[r, q]
        col = T[:, q].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        self.basis[r] = q

    def run(self, ncols: int) -> bool:
        """Iterate to optimality over the first ``ncols`` columns.

        Returns False if the objective is unbounded.
        """
        T = self.T
        k = len(self.basis)
        bland = False
        self.degenerate = 0
        while True:
            costs = T[k, :ncols]
            if bland:
                candidates = np.flatnonzero(costs > _COST_TOL)
                if candidates.size == 0:
                    return True
                q = int(candidates[0])
            else:
                q = int(np.argmax(costs))
                if costs[q] <= _COST_TOL:
                    return True
            column = T[:k, q]
            rows = np.flatnonzero(column > _PIVOT_TOL)
            if rows.size == 0:
                return False
            ratios = T[rows, -1] / column[rows]
            best = ratios.min()
            ties = rows[ratios <= best + 1e-12 * (1.0 + abs(best))]
            # lowest basic variable index among ties (Bland); also fine for Dantzig
            r = int(min(ties, key=lambda i: self.basis[i]))
            if T[r, -1] <= FEAS_TOL * 1e-3:
                self.degenerate += 1
                if self.degenerate > self.degenerate_limit:
                    bland = True
            self.pivot(r, q)
            self.iterations += 1
            if self.iterations > self.cap:
                raise NumericalStall(
                    f"simplex made no progress within {self.cap} iterations"
                )


def solve_lp(problem: LpProblem) -> LpSolution:
    """Two-phase dense simplex on ``problem``."""
    G = problem.constraint_matrix
    h = problem.rhs
    c = problem.objective
    k, n = G.shape

    # standard-form columns: one per nonnegative var, two per free var
    cols = []
    split = []  # (original var, sign)
    for j in range(n):
        cols.append(G[:, j])
        split.append((j, 1.0))
        if not problem.nonnegative[j]:
            cols.append(-G[:, j])
            split.append((j, -1.0))
    nx = len(cols)
    A_std = np.column_stack(cols + [np.eye(k)])  # x-part then slacks
    c_std = np.concatenate([[c[j] * s for j, s in split], np.zeros(k)])

    sign = np.where(h < 0, -1.0, 1.0)
    A_eq = A_std * sign[:, None]
    b_eq = h * sign
    needs_art = np.flatnonzero(h < 0)
    nart = needs_art.size
    ntot = nx + k + nart

    T = np.zeros((k + 1, ntot + 1))
    T[:k, : nx + k] = A_eq
    T[:k, -1] = b_eq
    basis = [nx + i for i in range(k)]
    for a, i in enumerate(needs_art):
        T[i, nx + k + a] = 1.0
        basis[i] = nx + k + a

    cap = 50 * (k + n)
    tab = _Tableau(T=T, basis=basis, cap=cap, degenerate_limit=3 * (k + n))

    if nart:
        # phase 1: maximize -(sum of artificials); reduced costs = sum of artificial rows
        T[k, :] = 0.0
        for i in needs_art:
            T[k, : nx + k] += T[i, : nx + k]
            T[k, -1] += T[i, -1]
        tab.run(ntot)
        # the rhs cell of the cost row tracks minus the objective
        infeas = T[k, -1]
        if infeas > FEAS_TOL * (1.0 + np.abs(h).max()):
            return LpSolution(LpStatus.INFEASIBLE, iterations=tab.iterations)
        # drive remaining artificials out of the basis
        keep = []
        for r in range(k):
            if tab.basis[r] >= nx + k:
                row = T[r, : nx + k]
                q = int(np.argmax(np.abs(row)))
                if abs(row[q]) > 1e-9:
                    tab.pivot(r, q)
                    keep.append(r)
                # else: redundant equality row; dropped below
            else:
                keep.append(r)
        if len(keep) < k:
            T = np.vstack([T[keep], T[k : k + 1]])
            tab.T = T
            tab.basis = [tab.basis[r] for r in keep]
        T = np.delete(T, np.s_[nx + k : ntot], axis=1)
        tab.T = T
    kk = len(tab.basis)

    # phase 2 reduced costs: c_j - c_B B^-1 A_j (maximization: enter on positive)
    T[kk, :] = 0.0
    T[kk, : nx + k] = c_std
    for r, bvar in enumerate(tab.basis):
        if c_std[bvar] != 0.0:
            T[kk] -= c_std[bvar] * T[r]
    if not tab.run(nx + k):
        return LpSolution(LpStatus.UNBOUNDED, iterations=tab.iterations)

    z = np.zeros(nx + k)
    z[tab.basis] = T[:kk, -1]
    # refine the basic solution against the original data
    rows = keep if nart and len(keep) < k else list(range(k))
    B = A_eq[np.ix_(rows, tab.basis)]
    try:
        zb = np.linalg.solve(B, b_eq[rows])
        drift = np.abs(zb - z[tab.basis]).max()
        if np.all(zb >= -FEAS_TOL) and drift <= 1e-6 * (1.0 + np.abs(zb).max()):
            z = np.zeros(nx + k)
            z[tab.basis] = zb
    except np.linalg.LinAlgError:
        pass

    x = np.zeros(n)
    for col, (j, s) in enumerate(split):
        x[j] += s * z[col]
    slack = h - G @ x
    tight = tuple(int(i) for i in np.flatnonzero(slack <= TIGHT_TOL))
    return LpSolution(
        LpStatus.OPTIMAL,
        optimum=float(c @ x),
        point=x,
        tight_rows=tight,
        iterations=tab.iterations,
    )


def maximize(objective, G, h, nonnegative=None) -> LpSolution:
    """Convenience wrapper around :func:`solve_lp`."""
    return solve_lp(LpProblem(objective, G, h, nonnegative))


def chebyshev(P) -> tuple[np.ndarray, float]:
    """Center and radius of a largest ball inside ``P``.

    Solves ``max r  s.t.  a_i^T x + r <= b_i,  r >= 0`` over ``(x, r)``; this
    form relies on the rows of ``P.normals`` having unit length.
    """
    from .errors import InfeasibleSystem, UnboundedRadius

    A, b = P.normals, P.offsets
    m, d = A.shape
    G = np.hstack([A, np.ones((m, 1))])
    c = np.zeros(d + 1)
    c[-1] = 1.0
    nonneg = np.zeros(d + 1, dtype=bool)
    nonneg[-1] = True
    sol = solve_lp(LpProblem(c, G, b, nonneg))
    if sol.status is LpStatus.INFEASIBLE:
        raise InfeasibleSystem("polytope is empty")
    if sol.status is LpStatus.UNBOUNDED:
        raise UnboundedRadius("inscribed radius is unbounded; input is not bounded")
    center = sol.point[:d].copy()
    return center, float(sol.point[-1])
