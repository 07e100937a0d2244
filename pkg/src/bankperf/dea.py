"""Output-oriented radial DEA under constant or variable returns to scale."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleCrossPeriod, MalformedInput, UndefinedDistance
from .lp import LpProblem, LpStatus, Relation, Constraint, solve_lp


class RTS(str, enum.Enum):
    CRS = "crs"
    VRS = "vrs"


@dataclass(frozen=True)
class TechnologySet:
    """Reference technology spanned by observed (input, output) bundles.

    inputs is n x K and outputs is n x M, one row per reference unit.
    """

    inputs: np.ndarray
    outputs: np.ndarray
    rts: RTS = RTS.CRS

    def __post_init__(self):
        x = np.atleast_2d(np.asarray(self.inputs, dtype=float))
        y = np.atleast_2d(np.asarray(self.outputs, dtype=float))
        object.__setattr__(self, "inputs", x)
        object.__setattr__(self, "outputs", y)
        object.__setattr__(self, "rts", RTS(self.rts))
        if x.shape[0] != y.shape[0]:
            raise MalformedInput(f"{x.shape[0]} input rows but {y.shape[0]} output rows")
        if x.shape[0] == 0:
            raise MalformedInput("technology has no reference units")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise MalformedInput("non-finite entry in technology")
        if np.any(x <= 0):
            raise MalformedInput("reference inputs must be strictly positive")
        if np.any(y < 0) or np.any(y.max(axis=1) <= 0):
            raise MalformedInput("reference outputs must be non-negative with one positive per unit")

    @property
    def n_units(self) -> int:
        return self.inputs.shape[0]


@dataclass(frozen=True)
class DistanceScore:
    """phi is the maximal radial output expansion; efficiency = 1/phi.

    Under cross-period evaluation phi may be below 1. ``feasible`` is False
    only for a VRS problem whose convexity constraint cannot be met; phi and
    efficiency are NaN then.
    """

    phi: float
    efficiency: float
    feasible: bool = True


def _check_dmu(x: np.ndarray, y: np.ndarray, tech: TechnologySet) -> None:
    if x.shape != (tech.inputs.shape[1],) or y.shape != (tech.outputs.shape[1],):
        raise MalformedInput(
            f"unit has {x.size} inputs/{y.size} outputs, technology has "
            f"{tech.inputs.shape[1]}/{tech.outputs.shape[1]}"
        )
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise MalformedInput("non-finite entry in evaluated unit")
    if np.any(x <= 0):
        raise MalformedInput("evaluated inputs must be strictly positive")
    if np.any(y < 0) or not y.max() > 0:
        raise MalformedInput("evaluated outputs must be non-negative with one positive")


def envelopment_lp(dmu_inputs, dmu_outputs, tech: TechnologySet) -> LpProblem:
    """Build the envelopment LP over variables ``(phi, lambda_1..lambda_n)``."""
    x0 = np.asarray(dmu_inputs, dtype=float)
    y0 = np.asarray(dmu_outputs, dtype=float)
    n = tech.n_units
    cons = []
    for k in range(tech.inputs.shape[1]):
        cons.append(Constraint((0.0, *tech.inputs[:, k]), Relation.LE, float(x0[k])))
    for r in range(tech.outputs.shape[1]):
        cons.append(Constraint((-float(y0[r]), *tech.outputs[:, r]), Relation.GE, 0.0))
    if tech.rts is RTS.VRS:
        cons.append(Constraint((0.0, *([1.0] * n)), Relation.EQ, 1.0))
    objective = (1.0, *([0.0] * n))
    return LpProblem(objective, tuple(cons))


def output_distance(dmu_inputs, dmu_outputs, tech: TechnologySet) -> DistanceScore:
    """Radial output expansion of one unit against ``tech``.

    Solves max phi s.t. sum_j lambda_j x_j <= x0, sum_j lambda_j y_j >= phi y0,
    lambda >= 0 (and sum lambda = 1 under VRS).
    """
    x0 = np.asarray(dmu_inputs, dtype=float)
    y0 = np.asarray(dmu_outputs, dtype=float)
    _check_dmu(x0, y0, tech)
    sol = solve_lp(envelopment_lp(x0, y0, tech))
    if sol.status is LpStatus.INFEASIBLE:
        return DistanceScore(math.nan, math.nan, feasible=False)
    if sol.status is not LpStatus.OPTIMAL:
        # inputs are strictly positive, so lambda and phi are bounded
        raise UndefinedDistance(f"envelopment LP ended with status {sol.status.value}")
    phi = float(sol.variable_values[0])
    if phi <= 1e-12:
        raise UndefinedDistance("no reference unit produces the evaluated output mix; phi = 0")
    return DistanceScore(phi, 1.0 / phi)


def require_feasible(score: DistanceScore, what: str = "cross-period VRS evaluation") -> DistanceScore:
    if not score.feasible:
        raise InfeasibleCrossPeriod(f"{what} is infeasible")
    return score


def efficiency_frontier(tech: TechnologySet) -> np.ndarray:
    """Same-period efficiency of every reference unit against the full set."""
    eff = np.empty(tech.n_units)
    for j in range(tech.n_units):
        score = output_distance(tech.inputs[j], tech.outputs[j], tech)
        eff[j] = require_feasible(score, "self-evaluation").efficiency
    # phi >= 1 holds exactly in self-evaluation; strip round-off above 1
    return np.where(eff <= 1.0 + 1e-9, np.minimum(eff, 1.0), eff)
