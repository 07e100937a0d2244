"""ROA, TSR and TFP series, growth rates, panel summaries and trend tables.

All three metrics share one analysis window: every panel year except the
first. The first year only supplies the prior price for TSR and the base
period for the first Malmquist pair, so each metric has the same
``n_banks x (n_years - 1)`` shape.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyGroup, InputError, InsufficientData, NonPositiveAssets, NonPositivePrice, ZeroBase
from .malmquist import MalmquistRecord, yearly_group_average
from .panel import PanelDataset

NEAR_ZERO_MEAN = 1e-6


def roa(net_income: float, total_assets: float) -> float:
    """Return on assets."""
    if not total_assets > 0:
        raise NonPositiveAssets(f"total assets must be positive, got {total_assets}")
    return net_income / total_assets


@dataclass(frozen=True)
class TsrParts:
    capital_gain: float
    dividend_yield: float

    @property
    def total(self) -> float:
        return self.capital_gain + self.dividend_yield


def tsr_parts(p0: float, p1: float, d1: float) -> TsrParts:
    if not p0 > 0 or not p1 > 0:
        raise NonPositivePrice(f"prices must be positive, got p0={p0}, p1={p1}")
    if not d1 >= 0:
        raise InputError(f"dividend must be non-negative, got {d1}")
    return TsrParts((p1 - p0) / p0, d1 / p0)


def tsr(p0: float, p1: float, d1: float) -> float:
    """Annual total stock return: capital gain yield plus dividend yield."""
    return tsr_parts(p0, p1, d1).total


@dataclass(frozen=True)
class MetricSeries:
    """One metric on a balanced bank x year grid (``values[i, j]``)."""

    metric: str
    banks: tuple[str, ...]
    years: tuple[int, ...]
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (len(self.banks), len(self.years)):
            raise InputError(f"{self.metric}: values shape {v.shape} does not match banks x years")
        if not np.all(np.isfinite(v)):
            raise InputError(f"{self.metric}: missing or non-finite cells")
        object.__setattr__(self, "values", v)

    def row(self, bank: str) -> np.ndarray:
        return self.values[self.banks.index(bank)]

    def column(self, year: int) -> dict[str, float]:
        j = self.years.index(year)
        return {b: float(self.values[i, j]) for i, b in enumerate(self.banks)}


def analysis_years(panel: PanelDataset) -> tuple[int, ...]:
    return panel.years[1:]


def roa_series(panel: PanelDataset) -> MetricSeries:
    years = analysis_years(panel)
    vals = [[roa(panel.record(b, y).net_income, panel.record(b, y).total_assets) for y in years] for b in panel.banks]
    return MetricSeries("ROA", panel.banks, years, np.array(vals, dtype=float).reshape(panel.n_banks, len(years)))


def tsr_series(panel: PanelDataset) -> MetricSeries:
    years = analysis_years(panel)
    vals = []
    for b in panel.banks:
        row = []
        for y in years:
            prev, cur = panel.record(b, y - 1), panel.record(b, y)
            row.append(tsr(prev.year_end_price, cur.year_end_price, cur.dividend_per_share))
        vals.append(row)
    return MetricSeries("TSR", panel.banks, years, np.array(vals, dtype=float).reshape(panel.n_banks, len(years)))


def tfp_series(panel: PanelDataset, records: Mapping[tuple[int, int], Sequence[MalmquistRecord]]) -> MetricSeries:
    """tfpch per bank, the pair (t, t+1) filed under year t+1."""
    years = analysis_years(panel)
    by_key = {(r.bank_id, r.report_year): r.tfpch for recs in records.values() for r in recs}
    try:
        vals = [[by_key[(b, y)] for y in years] for b in panel.banks]
    except KeyError as exc:
        raise InputError(f"TFP: no Malmquist record for (bank, year) {exc.args[0]}") from None
    return MetricSeries("TFP", panel.banks, years, np.array(vals, dtype=float).reshape(panel.n_banks, len(years)))


# growth rates


def growth_rates(values: Sequence[float], convention: str = "abs") -> np.ndarray:
    """Period-on-period growth ``(v[t+1] - v[t]) / |v[t]|``.

    ``convention="raw"`` divides by the signed base instead. Raises
    :class:`ZeroBase` when a base value is exactly zero.
    """
    v = np.asarray(values, dtype=float)
    if v.ndim != 1 or v.size < 2:
        raise InsufficientData("growth rates need at least two values")
    base = v[:-1]
    if np.any(base == 0):
        raise ZeroBase(f"zero base at position {int(np.flatnonzero(base == 0)[0])}")
    denom = _denominator(base, convention)
    return (v[1:] - base) / denom


def _denominator(base: np.ndarray, convention: str) -> np.ndarray:
    if convention == "abs":
        return np.abs(base)
    if convention == "raw":
        return base
    raise InputError(f"unknown growth-denominator convention {convention!r}")


@dataclass(frozen=True)
class GrowthSeries:
    """Growth observations keyed by (bank, later year).

    ``excluded`` lists (bank, year) keys dropped because the base value was 0.
    """

    metric: str
    convention: str
    values: dict[tuple[str, int], float]
    excluded: tuple[tuple[str, int], ...] = ()

    @property
    def n(self) -> int:
        return len(self.values)

    def array(self) -> np.ndarray:
        return np.array([self.values[k] for k in sorted(self.values)], dtype=float)

    def per_bank(self) -> dict[str, list[float]]:
        out: dict[str, list[float]] = {}
        for (b, _), g in sorted(self.values.items()):
            out.setdefault(b, []).append(g)
        return out


def growth_series(series: MetricSeries, convention: str = "abs") -> GrowthSeries:
    """Growth rates of every bank's year-ordered values in ``series``."""
    _denominator(np.ones(1), convention)
    values: dict[tuple[str, int], float] = {}
    excluded = []
    for i, b in enumerate(series.banks):
        row = series.values[i]
        for j in range(1, len(series.years)):
            key = (b, series.years[j])
            base = row[j - 1]
            if base == 0:
                excluded.append(key)
                continue
            values[key] = float((row[j] - base) / _denominator(np.array([base]), convention)[0])
    return GrowthSeries(series.metric, convention, values, tuple(excluded))


# panel summaries


@dataclass(frozen=True)
class PanelSummary:
    """Overall / between / within decomposition of one variable.

    An ``*_sd`` is None when there are too few banks (between) or years
    (within) for it to be defined.
    """

    mean: float
    overall_sd: float | None
    overall_min: float
    overall_max: float
    N: int
    between_sd: float | None
    between_min: float
    between_max: float
    n: int
    within_sd: float | None
    within_min: float
    within_max: float
    T: int


def panel_summary(values) -> PanelSummary:
    """Summarise an ``n x T`` array (or :class:`MetricSeries`)."""
    x = np.asarray(values.values if isinstance(values, MetricSeries) else values, dtype=float)
    if x.ndim != 2 or x.size == 0:
        raise InputError("panel_summary needs a non-empty n x T array")
    n, T = x.shape
    N = n * T
    grand = x.mean()
    bank_means = x.mean(axis=1)
    within = x - bank_means[:, None] + grand
    return PanelSummary(
        mean=float(grand),
        overall_sd=float(x.std(ddof=1)) if N >= 2 else None,
        overall_min=float(x.min()),
        overall_max=float(x.max()),
        N=N,
        between_sd=float(bank_means.std(ddof=1)) if n >= 2 else None,
        between_min=float(bank_means.min()),
        between_max=float(bank_means.max()),
        n=n,
        within_sd=float(np.sqrt(np.sum((x - bank_means[:, None]) ** 2) / (N - 1))) if T >= 2 else None,
        within_min=float(within.min()),
        within_max=float(within.max()),
        T=T,
    )


# trend tables


def _sd(v: Sequence[float]) -> float | None:
    a = np.asarray(v, dtype=float)
    return float(a.std(ddof=1)) if a.size >= 2 else None


def _cv(sd: float | None, mean: float) -> float | None:
    if sd is None or mean == 0:
        return None
    return sd / mean


@dataclass(frozen=True)
class GroupTrend:
    label: str
    size: int
    yearly_means: tuple[float, ...]
    cumulative_mean: float
    sd: float | None
    cv: float | None


@dataclass(frozen=True)
class TrendTable:
    """Tables 2-4 layout: group rows, then all-banks rows per year."""

    metric: str
    years: tuple[int, ...]
    groups: tuple[GroupTrend, ...]
    yearly_mean: tuple[float, ...]
    yearly_sd: tuple[float | None, ...]
    yearly_cv: tuple[float | None, ...]
    yearly_max: tuple[float, ...]
    yearly_min: tuple[float, ...]
    cumulative_mean: float
    sd: float | None
    cv: float | None
    aggregation: str = "arithmetic"
    near_zero_means: tuple[str, ...] = field(default=())


def trend_table(
    series: MetricSeries,
    groups: Mapping[str, Sequence[str]],
    aggregation: str = "arithmetic",
) -> TrendTable:
    """Yearly group means plus all-banks yearly statistics for one metric.

    The cumulative average of a row is the plain mean of its yearly means;
    its SD and CV describe the spread of those yearly means.
    """
    if not groups or any(len(m) == 0 for m in groups.values()):
        raise EmptyGroup("trend table needs non-empty groups")
    cells = [yearly_group_average(series.column(y), groups, aggregation) for y in series.years]
    flags = []
    rows = []
    for label in groups:
        ym = tuple(c.group_means[label] for c in cells)
        cm = float(np.mean(ym))
        sd = _sd(ym)
        if abs(cm) < NEAR_ZERO_MEAN:
            flags.append(f"{label} cumulative mean")
        rows.append(GroupTrend(label, cells[0].group_sizes[label], ym, cm, sd, _cv(sd, cm)))

    yearly_mean = tuple(c.overall for c in cells)
    yearly_sd = tuple(_sd(series.values[:, j]) for j in range(len(series.years)))
    for y, m in zip(series.years, yearly_mean):
        if abs(m) < NEAR_ZERO_MEAN:
            flags.append(f"all banks {y}")
    cm = float(np.mean(yearly_mean))
    sd = _sd(yearly_mean)
    if abs(cm) < NEAR_ZERO_MEAN:
        flags.append("all banks cumulative mean")
    return TrendTable(
        metric=series.metric,
        years=series.years,
        groups=tuple(rows),
        yearly_mean=yearly_mean,
        yearly_sd=yearly_sd,
        yearly_cv=tuple(_cv(s, m) for s, m in zip(yearly_sd, yearly_mean)),
        yearly_max=tuple(float(v) for v in series.values.max(axis=0)),
        yearly_min=tuple(float(v) for v in series.values.min(axis=0)),
        cumulative_mean=cm,
        sd=sd,
        cv=_cv(sd, cm),
        aggregation=aggregation,
        near_zero_means=tuple(flags),
    )
