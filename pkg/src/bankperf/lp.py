"""Dense two-phase primal simplex for the small LPs that DEA produces.

Bland's smallest-index rule is used for both the entering and leaving
choice, which guarantees termination on degenerate problems (DEA LPs are
frequently degenerate because many units sit on the same facet).
"""

from __future__ import annotations

import enum
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import MalformedProblem

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-7
OPT_TOL = 1e-9


class Relation(str, enum.Enum):
    LE = "<="
    GE = ">="
    EQ = "="


class LpStatus(str, enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class Constraint:
    coefficients: tuple[float, ...]
    relation: Relation
    rhs: float


@dataclass(frozen=True)
class LpProblem:
    """maximize ``objective @ x`` subject to ``constraints``.

    Variables default to ``x >= 0``. ``lower_bounds`` shifts that bound;
    indices listed in ``free`` are unbounded in both directions (their lower
    bound is ignored).
    """

    objective: tuple[float, ...]
    constraints: tuple[Constraint, ...] = ()
    lower_bounds: tuple[float, ...] | None = None
    free: frozenset[int] = field(default_factory=frozenset)

    @classmethod
    def build(
        cls,
        objective: Sequence[float],
        constraints: Sequence[tuple[Sequence[float], str | Relation, float]] = (),
        lower_bounds: Sequence[float] | None = None,
        free: Sequence[int] = (),
    ) -> LpProblem:
        """Convenience constructor taking plain ``(coeffs, relation, rhs)`` triples."""
        cons = tuple(
            Constraint(tuple(float(a) for a in coeffs), Relation(rel), float(rhs))
            for coeffs, rel, rhs in constraints
        )
        lb = None if lower_bounds is None else tuple(float(v) for v in lower_bounds)
        return cls(tuple(float(c) for c in objective), cons, lb, frozenset(free))

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def check(self) -> None:
        n = self.n_vars
        if n == 0:
            raise MalformedProblem("objective has no variables")
        if not all(math.isfinite(c) for c in self.objective):
            raise MalformedProblem("non-finite objective coefficient")
        for i, con in enumerate(self.constraints):
            if len(con.coefficients) != n:
                raise MalformedProblem(
                    f"constraint {i} has {len(con.coefficients)} coefficients, expected {n}"
                )
            if not all(math.isfinite(a) for a in con.coefficients) or not math.isfinite(con.rhs):
                raise MalformedProblem(f"constraint {i} has a non-finite entry")
        if self.lower_bounds is not None:
            if len(self.lower_bounds) != n:
                raise MalformedProblem("lower_bounds length does not match objective")
            if not all(math.isfinite(v) for v in self.lower_bounds):
                raise MalformedProblem("non-finite lower bound")
        if any(not 0 <= j < n for j in self.free):
            raise MalformedProblem("free-variable index out of range")


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    objective_value: float
    variable_values: np.ndarray

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


class _Tableau:
    """Simplex tableau ``A x = b`` with an explicit basis."""

    def __init__(self, A: np.ndarray, b: np.ndarray, basis: list[int]):
        self.A = A
        self.b = b
        self.basis = basis

    def pivot(self, row: int, col: int) -> None:
        A, b = self.A, self.b
        p = A[row, col]
        A[row] /= p
        b[row] /= p
        A[row, col] = 1.0
        for i in range(A.shape[0]):
            if i != row:
                f = A[i, col]
                if f != 0.0:
                    A[i] -= f * A[row]
                    b[i] -= f * b[row]
                    A[i, col] = 0.0
        self.basis[row] = col

    def reduced_costs(self, c: np.ndarray) -> np.ndarray:
        cb = c[self.basis]
        return c - cb @ self.A

    def run(self, c: np.ndarray, allowed: np.ndarray) -> bool:
        """Maximize ``c @ x`` over the current basis. False when unbounded."""
        while True:
            d = self.reduced_costs(c)
            candidates = np.flatnonzero((d > OPT_TOL) & allowed)
            if candidates.size == 0:
                return True
            col = int(candidates[0])
            column = self.A[:, col]
            rows = np.flatnonzero(column > PIVOT_TOL)
            if rows.size == 0:
                return False
            ratios = self.b[rows] / column[rows]
            best = ratios.min()
            tied = rows[ratios <= best + 1e-12 * (1.0 + abs(best))]
            row = min(tied, key=lambda r: self.basis[r])
            self.pivot(int(row), col)


def solve_lp(p: LpProblem) -> LpSolution:
    """Solve a maximization LP with the two-phase simplex method."""
    p.check()
    n = p.n_vars
    lb = np.zeros(n) if p.lower_bounds is None else np.array(p.lower_bounds, dtype=float)
    for j in p.free:
        lb[j] = 0.0

    # column map: original var j -> (positive column, negative column or None)
    cols: list[tuple[int, int | None]] = []
    ncol = 0
    for j in range(n):
        if j in p.free:
            cols.append((ncol, ncol + 1))
            ncol += 2
        else:
            cols.append((ncol, None))
            ncol += 1

    m = len(p.constraints)
    A_orig = np.array([con.coefficients for con in p.constraints], dtype=float).reshape(m, n)
    rhs = np.array([con.rhs for con in p.constraints], dtype=float) - A_orig @ lb
    rels = [con.relation for con in p.constraints]

    A_struct = np.zeros((m, ncol))
    c_struct = np.zeros(ncol)
    for j, (pos, neg) in enumerate(cols):
        A_struct[:, pos] = A_orig[:, j]
        c_struct[pos] = p.objective[j]
        if neg is not None:
            A_struct[:, neg] = -A_orig[:, j]
            c_struct[neg] = -p.objective[j]

    for i in range(m):
        if rhs[i] < 0:
            rhs[i] = -rhs[i]
            A_struct[i] = -A_struct[i]
            if rels[i] is Relation.LE:
                rels[i] = Relation.GE
            elif rels[i] is Relation.GE:
                rels[i] = Relation.LE

    n_slack = sum(r is not Relation.EQ for r in rels)
    n_art = sum(r is not Relation.LE for r in rels)
    total = ncol + n_slack + n_art
    A = np.zeros((m, total))
    A[:, :ncol] = A_struct
    basis = [0] * m
    s = ncol
    a = ncol + n_slack
    for i, rel in enumerate(rels):
        if rel is Relation.LE:
            A[i, s] = 1.0
            basis[i] = s
            s += 1
        elif rel is Relation.GE:
            A[i, s] = -1.0
            s += 1
            A[i, a] = 1.0
            basis[i] = a
            a += 1
        else:
            A[i, a] = 1.0
            basis[i] = a
            a += 1

    tab = _Tableau(A, rhs.copy(), basis)
    is_art = np.zeros(total, dtype=bool)
    is_art[ncol + n_slack :] = True

    if n_art:
        c1 = np.where(is_art, -1.0, 0.0)
        tab.run(c1, np.ones(total, dtype=bool))
        infeas = sum(tab.b[i] for i in range(m) if is_art[tab.basis[i]])
        if infeas > FEAS_TOL:
            return LpSolution(LpStatus.INFEASIBLE, math.nan, np.full(n, math.nan))
        # drive zero-level artificials out of the basis; drop redundant rows
        keep = []
        for i in range(m):
            if is_art[tab.basis[i]]:
                nonart = np.flatnonzero((np.abs(tab.A[i]) > PIVOT_TOL) & ~is_art)
                if nonart.size:
                    tab.pivot(i, int(nonart[0]))
                    keep.append(i)
            else:
                keep.append(i)
        tab.A = tab.A[keep]
        tab.b = tab.b[keep]
        tab.basis = [tab.basis[i] for i in keep]

    c2 = np.zeros(total)
    c2[:ncol] = c_struct
    if not tab.run(c2, ~is_art):
        return LpSolution(LpStatus.UNBOUNDED, math.inf, np.full(n, math.nan))

    xcol = np.zeros(total)
    for i, j in enumerate(tab.basis):
        xcol[j] = tab.b[i]
    x = np.empty(n)
    for j, (pos, neg) in enumerate(cols):
        x[j] = xcol[pos] - (xcol[neg] if neg is not None else 0.0) + lb[j]
    value = float(np.dot(p.objective, x))
    return LpSolution(LpStatus.OPTIMAL, value, x)
