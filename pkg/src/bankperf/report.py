"""End-to-end pipeline and table rendering.

:func:`run_pipeline` turns a panel into a :class:`ReportBundle`;
:func:`render_report` turns a bundle into Markdown or CSV text files.
Rendering is a pure function of the bundle, so identical inputs give
byte-identical files.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InputError, NumericError, UnwritableOutput
from .malmquist import MalmquistRecord, malmquist_panel, yearly_group_average
from .metrics import (
    GrowthSeries,
    MetricSeries,
    PanelSummary,
    TrendTable,
    growth_series,
    panel_summary,
    roa_series,
    trend_table,
    tfp_series,
    tsr_series,
)
from .panel import PanelDataset, SchemaConfig, load_panel
from .stats import AnovaResult, PairedTResult, one_way_anova, paired_t_test

METRICS = ("ROA", "TSR", "TFP")
PAIRS = (
    ("H2o", "ChROA-ChTSR", "ROA", "TSR"),
    ("H3o", "ChTSR-ChTFP", "TSR", "TFP"),
    ("H4o", "ChROA-ChTFP", "ROA", "TFP"),
)
HYPOTHESES = {
    "H1o": "no difference among mean growth rates of ROA, TSR and TFP",
    "H2o": "no difference between mean growth rates of ROA and TSR",
    "H3o": "no difference between mean growth rates of TSR and TFP",
    "H4o": "no difference between mean growth rates of ROA and TFP",
}
TABLES = ("descriptives", "roa_trend", "tsr_trend", "tfp_trend", "anova", "paired_t", "verdicts")
FILE_STEMS = {
    "descriptives": "table1_descriptives",
    "roa_trend": "table2_roa_trend",
    "tsr_trend": "table3_tsr_trend",
    "tfp_trend": "table4_tfp_trend",
    "anova": "table5_anova",
    "paired_t": "table6_paired_t",
    "verdicts": "verdicts",
    "malmquist": "malmquist_indices",
    "exclusions": "growth_exclusions",
}


@dataclass(frozen=True)
class RunConfig:
    panel_path: Path
    schema_path: Path
    out_dir: Path | None = None
    formats: tuple[str, ...] = ("markdown",)
    alpha: float = 0.05
    growth_denominator: str = "abs"
    aggregation: str = "arithmetic"

    def validate(self) -> None:
        for p in (self.panel_path, self.schema_path):
            if not Path(p).is_file():
                raise InputError(f"cannot read {p}")
        if not 0 < self.alpha < 1:
            raise InputError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.growth_denominator not in ("abs", "raw"):
            raise InputError(f"growth denominator must be abs or raw, got {self.growth_denominator!r}")
        if self.aggregation not in ("arithmetic", "geometric"):
            raise InputError(f"aggregation must be arithmetic or geometric, got {self.aggregation!r}")
        for f in self.formats:
            if f not in ("markdown", "csv"):
                raise InputError(f"unknown output format {f!r}")


@dataclass(frozen=True)
class PairOutcome:
    hypothesis: str
    label: str
    first: str
    second: str
    result: PairedTResult | None
    error: str | None
    unmatched: tuple[tuple[str, int], ...] = ()


@dataclass(frozen=True)
class Verdict:
    hypothesis: str
    statement: str
    test: str
    p: float | None
    decision: str  # "reject", "fail to reject" or "undetermined"
    reason: str = ""


@dataclass(frozen=True)
class ReportBundle:
    banks: tuple[str, ...]
    years: tuple[int, ...]
    groups: dict[str, list[str]]
    series: dict[str, MetricSeries]
    descriptives: dict[str, PanelSummary]
    trends: dict[str, TrendTable]
    malmquist: dict[tuple[int, int], list[MalmquistRecord]]
    growth: dict[str, GrowthSeries]
    anova: AnovaResult | None
    anova_error: str | None
    pairs: tuple[PairOutcome, ...]
    verdicts: tuple[Verdict, ...]
    alpha: float = 0.05
    growth_denominator: str = "abs"
    aggregation: str = "arithmetic"
    notes: tuple[str, ...] = field(default=())


def decide(p: float | None, alpha: float) -> str:
    if p is None:
        return "undetermined"
    return "reject" if p < alpha else "fail to reject"


def analyse_panel(
    panel: PanelDataset,
    alpha: float = 0.05,
    growth_denominator: str = "abs",
    aggregation: str = "arithmetic",
) -> ReportBundle:
    """Run every stage on an already-parsed panel."""
    if panel.n_years < 2:
        raise InputError("the panel needs at least two years (a base year plus one analysis year)")
    groups = panel.groups()
    records = malmquist_panel(panel)
    series = {"ROA": roa_series(panel), "TSR": tsr_series(panel), "TFP": tfp_series(panel, records)}

    descriptives = {name: panel_summary(s) for name, s in series.items()}
    n, T = panel.n_banks, len(series["ROA"].years)
    codes = {label: i + 1 for i, label in enumerate(groups)}
    descriptives["bn"] = panel_summary(np.repeat(np.arange(1, n + 1, dtype=float)[:, None], T, axis=1))
    descriptives["bc"] = panel_summary(
        np.repeat(np.array([codes[panel.group_of(b)] for b in panel.banks], dtype=float)[:, None], T, axis=1)
    )
    descriptives["year"] = panel_summary(np.tile(np.array(series["ROA"].years, dtype=float), (n, 1)))

    trends = {
        "ROA": trend_table(series["ROA"], groups),
        "TSR": trend_table(series["TSR"], groups),
        "TFP": trend_table(series["TFP"], groups, aggregation),
    }
    growth = {name: growth_series(s, growth_denominator) for name, s in series.items()}

    notes = []
    if alpha != 0.05:
        notes.append(f"alpha = {alpha} differs from the conventional 0.05")
    anova = anova_error = None
    try:
        anova = one_way_anova([growth[m].array() for m in METRICS])
    except NumericError as exc:
        anova_error = f"{type(exc).__name__}: {exc}"

    pairs = []
    for hyp, label, a, b in PAIRS:
        ga, gb = growth[a].values, growth[b].values
        common = sorted(set(ga) & set(gb))
        unmatched = tuple(sorted(set(ga) ^ set(gb)))
        try:
            res = paired_t_test({k: ga[k] for k in common}, {k: gb[k] for k in common}, alpha=alpha)
            pairs.append(PairOutcome(hyp, label, a, b, res, None, unmatched))
        except NumericError as exc:
            pairs.append(PairOutcome(hyp, label, a, b, None, f"{type(exc).__name__}: {exc}", unmatched))

    verdicts = [
        Verdict(
            "H1o",
            HYPOTHESES["H1o"],
            "one-way ANOVA",
            None if anova is None else anova.p,
            decide(None if anova is None else anova.p, alpha),
            anova_error or "",
        )
    ]
    for po in pairs:
        p = None if po.result is None else po.result.p
        verdicts.append(
            Verdict(po.hypothesis, HYPOTHESES[po.hypothesis], f"paired t ({po.label})", p, decide(p, alpha), po.error or "")
        )

    return ReportBundle(
        banks=panel.banks,
        years=series["ROA"].years,
        groups=groups,
        series=series,
        descriptives=descriptives,
        trends=trends,
        malmquist=records,
        growth=growth,
        anova=anova,
        anova_error=anova_error,
        pairs=tuple(pairs),
        verdicts=tuple(verdicts),
        alpha=alpha,
        growth_denominator=growth_denominator,
        aggregation=aggregation,
        notes=tuple(notes),
    )


def load_inputs(config: RunConfig) -> PanelDataset:
    config.validate()
    schema = SchemaConfig.from_file(config.schema_path)
    try:
        return load_panel(config.panel_path, schema)
    except InputError as exc:
        raise InputError(f"{config.panel_path}: {exc}") from exc


def run_pipeline(config: RunConfig) -> ReportBundle:
    panel = load_inputs(config)
    return analyse_panel(panel, config.alpha, config.growth_denominator, config.aggregation)


# rendering


def fmt(v) -> str:
    """Six significant digits; blank for undefined cells."""
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    out = f"{v:.6g}"
    return "0" if out == "-0" else out


@dataclass
class _Table:
    title: str
    header: list[str]
    rows: list[list[str]]
    notes: list[str] = field(default_factory=list)


def _descriptives_table(b: ReportBundle) -> _Table:
    rows = []
    for name, s in b.descriptives.items():
        rows.append([name, "Overall", fmt(s.mean), fmt(s.overall_sd), fmt(s.overall_min), fmt(s.overall_max), f"N = {s.N}"])
        rows.append(["", "Between", "", fmt(s.between_sd), fmt(s.between_min), fmt(s.between_max), f"n = {s.n}"])
        rows.append(["", "Within", "", fmt(s.within_sd), fmt(s.within_min), fmt(s.within_max), f"T = {s.T}"])
    codes = ", ".join(f"{i + 1} = {g}" for i, g in enumerate(b.groups))
    return _Table(
        "Descriptive statistics for three dimensions of performance",
        ["Variable", "", "Mean", "Std.Dev.", "Min.", "Max", "Observations"],
        rows,
        [f"bn: bank number 1..{len(b.banks)} in sorted bank-id order; bc: bank category ({codes})"],
    )


def _year_labels(b: ReportBundle, metric: str) -> list[str]:
    if metric == "TFP":
        return [f"{y - 1}-{y}" for y in b.years]
    return [str(y) for y in b.years]


def _trend_table(b: ReportBundle, metric: str) -> _Table:
    t = b.trends[metric]
    header = ["Banks", *_year_labels(b, metric), "Cumulative Average", "SD", "CV"]
    rows = [[g.label, *map(fmt, g.yearly_means), fmt(g.cumulative_mean), fmt(g.sd), fmt(g.cv)] for g in t.groups]
    blank = ["", "", ""]
    rows.append(["All Banks", *[""] * len(t.years), *blank])
    rows.append(["Max", *map(fmt, t.yearly_max), *blank])
    rows.append(["Min", *map(fmt, t.yearly_min), *blank])
    rows.append(["Yearly Average", *map(fmt, t.yearly_mean), fmt(t.cumulative_mean), fmt(t.sd), fmt(t.cv)])
    rows.append(["SD", *map(fmt, t.yearly_sd), *blank])
    rows.append(["CV", *map(fmt, t.yearly_cv), *blank])
    titles = {"ROA": "Trend analysis of profitability (ROA)", "TSR": "Trend analysis of stock performance (TSR)",
              "TFP": "Trend analysis of total factor productivity change index"}
    notes = [f"group and yearly means: {t.aggregation}"]
    if metric == "TFP":
        notes.append("index for the year pair (t, t+1) is reported under t+1")
        other = "geometric" if t.aggregation == "arithmetic" else "arithmetic"
        alt = [yearly_group_average(b.series["TFP"].column(y), b.groups, other).overall for y in t.years]
        rows.append([f"Yearly Average ({other})", *map(fmt, alt), *blank])
    if t.near_zero_means:
        notes.append("CV unstable, |mean| < 1e-6: " + "; ".join(t.near_zero_means))
    return _Table(titles[metric], header, rows, notes)


def _anova_table(b: ReportBundle) -> _Table:
    header = ["Source", "Sum of Squares", "df", "Mean Square", "F", "Sig"]
    notes = [f"growth denominator: {'|v_t|' if b.growth_denominator == 'abs' else 'v_t'}"]
    a = b.anova
    if a is None:
        rows = [["Between Groups", "", "", "", "", ""], ["Within Groups", "", "", "", "", ""], ["Total", "", "", "", "", ""]]
        notes.append(f"ANOVA not computed: {b.anova_error}")
    else:
        rows = [
            ["Between Groups", fmt(a.ss_between), fmt(a.df_between), fmt(a.ms_between), fmt(a.f), fmt(a.p)],
            ["Within Groups", fmt(a.ss_within), fmt(a.df_within), fmt(a.ms_within), "", ""],
            ["Total", fmt(a.ss_total), fmt(a.df_total), "", "", ""],
        ]
    for m in METRICS:
        g = b.growth[m]
        line = f"Ch{m}: {g.n} growth observations"
        if g.excluded:
            line += f", {len(g.excluded)} excluded for a zero base"
        notes.append(line)
    return _Table("One-way ANOVA for equivalency of mean growth rate", header, rows, notes)


def _paired_table(b: ReportBundle) -> _Table:
    header = ["Pair", "Mean", "Std. Deviation", "Std. Error Mean", "95% CI Lower", "95% CI Upper", "t", "df", "Sig. (2-tailed)"]
    rows, notes = [], []
    for i, po in enumerate(b.pairs, start=1):
        label = f"Pair {i} {po.label}"
        r = po.result
        if r is None:
            rows.append([label, *[""] * 8])
            notes.append(f"{label}: {po.error}")
        else:
            rows.append([label, fmt(r.mean_diff), fmt(r.sd_diff), fmt(r.se), fmt(r.ci_low), fmt(r.ci_high), fmt(r.t), fmt(r.df), fmt(r.p)])
        if po.unmatched:
            notes.append(f"{label}: {len(po.unmatched)} unmatched (bank, year) keys left out")
    return _Table("Paired-sample t test for equivalency of mean growth rate", header, rows, notes)


def _verdict_table(b: ReportBundle) -> _Table:
    rows = [[v.hypothesis, v.statement, v.test, fmt(v.p), fmt(b.alpha), v.decision, v.reason] for v in b.verdicts]
    notes = list(b.notes)
    notes.append(f"growth denominator: {b.growth_denominator}; TFP aggregation: {b.aggregation}")
    return _Table("Hypothesis verdicts", ["Hypothesis", "Statement", "Test", "p", "alpha", "Decision", "Reason"], rows, notes)


def _malmquist_table(b: ReportBundle) -> _Table:
    header = ["bank_id", "period", "d_t_t", "d_t_t1", "d_t1_t", "d_t1_t1", "effch", "techch", "pech", "sech", "tfpch"]
    rows = []
    for pair, recs in b.malmquist.items():
        for r in recs:
            rows.append([r.bank_id, f"{pair[0]}-{pair[1]}", *map(fmt, (r.d_t_t, r.d_t_t1, r.d_t1_t, r.d_t1_t1, r.effch, r.techch, r.pech, r.sech, r.tfpch))])
    for pair, recs in b.malmquist.items():
        fields = ("effch", "techch", "pech", "sech", "tfpch")
        for kind in ("arithmetic", "geometric"):
            means = [yearly_group_average({r.bank_id: getattr(r, f) for r in recs}, b.groups, kind).overall for f in fields]
            rows.append([f"mean ({kind})", f"{pair[0]}-{pair[1]}", "", "", "", "", *map(fmt, means)])
    return _Table(
        "Malmquist TFP change index and decomposition",
        header,
        rows,
        ["d_s_u: CRS output distance of period-u data against the period-s frontier"],
    )


def _exclusions_table(b: ReportBundle) -> _Table:
    rows = [[m, bank, str(year)] for m in METRICS for bank, year in b.growth[m].excluded]
    return _Table("Growth observations excluded for a zero base value", ["Metric", "bank_id", "year"], rows)


_BUILDERS = {
    "descriptives": _descriptives_table,
    "roa_trend": lambda b: _trend_table(b, "ROA"),
    "tsr_trend": lambda b: _trend_table(b, "TSR"),
    "tfp_trend": lambda b: _trend_table(b, "TFP"),
    "anova": _anova_table,
    "paired_t": _paired_table,
    "verdicts": _verdict_table,
    "malmquist": _malmquist_table,
    "exclusions": _exclusions_table,
}


def _md_escape(cell: str) -> str:
    return cell.replace("|", "\\|")


def _to_markdown(t: _Table) -> str:
    lines = [f"# {t.title}", ""]
    lines.append("| " + " | ".join(_md_escape(h) for h in t.header) + " |")
    lines.append("|" + "|".join("---" for _ in t.header) + "|")
    for row in t.rows:
        lines.append("| " + " | ".join(_md_escape(c) for c in row) + " |")
    if t.notes:
        lines.append("")
        lines.extend(f"- {n}" for n in t.notes)
    return "\n".join(lines) + "\n"


def _to_csv(t: _Table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(t.header)
    w.writerows(t.rows)
    return buf.getvalue()


def render_report(
    bundle: ReportBundle,
    fmt_name: str = "markdown",
    tables: tuple[str, ...] = TABLES,
    out_dir: str | Path | None = None,
) -> dict[str, str]:
    """Render ``tables`` of ``bundle``; returns file name -> text.

    With ``out_dir`` the files are also written there. CSV files hold the
    bare table; table notes go only into the Markdown rendering.
    """
    if fmt_name not in ("markdown", "csv"):
        raise InputError(f"unknown format {fmt_name!r}")
    ext = "md" if fmt_name == "markdown" else "csv"
    render = _to_markdown if fmt_name == "markdown" else _to_csv
    tables = tuple(tables)
    if "exclusions" not in tables and any(bundle.growth[m].excluded for m in METRICS) and (
        "anova" in tables or "paired_t" in tables
    ):
        tables = (*tables, "exclusions")
    files = {f"{FILE_STEMS[name]}.{ext}": render(_BUILDERS[name](bundle)) for name in tables}
    if out_dir is not None:
        write_files(files, out_dir)
    return files


def write_files(files: dict[str, str], out_dir: str | Path) -> None:
    d = Path(out_dir)
    try:
        d.mkdir(parents=True, exist_ok=True)
        for name, text in files.items():
            (d / name).write_text(text, encoding="utf-8", newline="")
    except OSError as exc:
        raise UnwritableOutput(f"cannot write report to {d}: {exc}") from exc
