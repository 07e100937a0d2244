"""Three-dimension bank performance: Malmquist TFP change, ROA and TSR.

Computes the three measures from a balanced bank-year panel, turns them into
growth rates and tests whether their means are equivalent.
"""

from .dea import RTS, DistanceScore, TechnologySet, efficiency_frontier, output_distance
from .lp import LpProblem, LpSolution, LpStatus, solve_lp
from .malmquist import MalmquistRecord, malmquist_indices, malmquist_panel, yearly_group_average
from .metrics import (
    GrowthSeries,
    MetricSeries,
    PanelSummary,
    TrendTable,
    growth_rates,
    growth_series,
    panel_summary,
    roa,
    trend_table,
    tsr,
)
from .panel import BankYearRecord, PanelDataset, SchemaConfig, parse_panel_csv, validate_record
from .report import ReportBundle, RunConfig, analyse_panel, render_report, run_pipeline
from .stats import (
    AnovaResult,
    PairedTResult,
    f_cdf,
    f_sf,
    one_way_anova,
    paired_t_test,
    reg_inc_beta,
    t_cdf,
    t_quantile,
)

__version__ = "0.1.0"
