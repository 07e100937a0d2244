"""Malmquist total factor productivity index between adjacent years.

Output-oriented, geometric-mean form with the usual decomposition:

    effch  = D[t+1](t+1) / D[t](t)
    techch = sqrt( D[t](t+1)/D[t+1](t+1) * D[t](t)/D[t+1](t) )
    tfpch  = effch * techch
    pech   = VRS efficiency at t+1 / VRS efficiency at t
    sech   = effch / pech

where D[s](u) is the CRS output distance of period-u data against the
period-s frontier. VRS problems are only solved within a period, so they are
always feasible.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .dea import RTS, TechnologySet, output_distance, require_feasible
from .errors import EmptyGroup, InputError, MissingPeriod
from .panel import PanelDataset


@dataclass(frozen=True)
class MalmquistRecord:
    bank_id: str
    year_pair: tuple[int, int]
    d_t_t: float
    d_t_t1: float
    d_t1_t: float
    d_t1_t1: float
    vrs_t: float
    vrs_t1: float
    effch: float
    techch: float
    tfpch: float
    pech: float
    sech: float

    @property
    def report_year(self) -> int:
        """Index for the pair (t, t+1) is reported under year t+1."""
        return self.year_pair[1]


def _distance(x, y, tech: TechnologySet) -> float:
    return require_feasible(output_distance(x, y, tech)).efficiency


def malmquist_indices(panel: PanelDataset, t: int) -> list[MalmquistRecord]:
    """One :class:`MalmquistRecord` per bank for the year pair ``(t, t+1)``."""
    if t not in panel.years or t + 1 not in panel.years:
        raise MissingPeriod(f"year pair ({t}, {t + 1}) not covered by panel years {list(panel.years)}")
    x0, y0 = panel.inputs_matrix(t), panel.outputs_matrix(t)
    x1, y1 = panel.inputs_matrix(t + 1), panel.outputs_matrix(t + 1)
    crs0, crs1 = TechnologySet(x0, y0, RTS.CRS), TechnologySet(x1, y1, RTS.CRS)
    vrs0, vrs1 = TechnologySet(x0, y0, RTS.VRS), TechnologySet(x1, y1, RTS.VRS)

    out = []
    for i, bank in enumerate(panel.banks):
        d_t_t = _distance(x0[i], y0[i], crs0)
        d_t_t1 = _distance(x1[i], y1[i], crs0)
        d_t1_t = _distance(x0[i], y0[i], crs1)
        d_t1_t1 = _distance(x1[i], y1[i], crs1)
        v_t = _distance(x0[i], y0[i], vrs0)
        v_t1 = _distance(x1[i], y1[i], vrs1)
        effch = d_t1_t1 / d_t_t
        techch = math.sqrt((d_t_t1 / d_t1_t1) * (d_t_t / d_t1_t))
        pech = v_t1 / v_t
        out.append(
            MalmquistRecord(
                bank_id=bank,
                year_pair=(t, t + 1),
                d_t_t=d_t_t,
                d_t_t1=d_t_t1,
                d_t1_t=d_t1_t,
                d_t1_t1=d_t1_t1,
                vrs_t=v_t,
                vrs_t1=v_t1,
                effch=effch,
                techch=techch,
                tfpch=effch * techch,
                pech=pech,
                sech=effch / pech,
            )
        )
    return out


def malmquist_panel(panel: PanelDataset) -> dict[tuple[int, int], list[MalmquistRecord]]:
    """Indices for every adjacent year pair of the panel, keyed by pair."""
    return {(t, t + 1): malmquist_indices(panel, t) for t in panel.years[:-1]}


@dataclass(frozen=True)
class GroupAverage:
    """One trend-table cell: per-group means plus the all-banks mean."""

    group_means: dict[str, float]
    group_sizes: dict[str, int]
    overall: float
    aggregation: str = "arithmetic"


def yearly_group_average(
    values: Mapping[str, float],
    groups: Mapping[str, Sequence[str]],
    aggregation: str = "arithmetic",
) -> GroupAverage:
    """Average ``values`` (bank -> value) within each group and over all banks.

    With ``aggregation="geometric"`` the means are geometric, which needs
    strictly positive values (index numbers such as tfpch).
    """
    if aggregation not in ("arithmetic", "geometric"):
        raise InputError(f"unknown aggregation {aggregation!r}")
    if not groups:
        raise EmptyGroup("no groups given")
    means, sizes = {}, {}
    for label, members in groups.items():
        v = np.array([values[b] for b in members], dtype=float)
        if v.size == 0:
            raise EmptyGroup(f"group {label!r} has no members")
        if aggregation == "geometric":
            if np.any(v <= 0):
                raise InputError("geometric mean needs strictly positive values")
            means[label] = float(np.exp(np.mean(np.log(v))))
        else:
            means[label] = float(np.mean(v))
        sizes[label] = int(v.size)
    total = sum(sizes.values())
    if aggregation == "geometric":
        overall = math.exp(sum(sizes[g] * math.log(means[g]) for g in means) / total)
    else:
        overall = sum(sizes[g] * means[g] for g in means) / total
    return GroupAverage(means, sizes, overall, aggregation)
