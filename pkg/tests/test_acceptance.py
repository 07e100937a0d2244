"""Acceptance criteria, one test each.

The terminal summary (see conftest) prints one PASS/FAIL line per criterion.
"""

import time

import numpy as np
import pytest
from conftest import panel_from_arrays, random_panel
from oracles import lp_vertex_enumeration, malmquist_1d, random_bounded_lp

from bankperf.dea import RTS, TechnologySet, efficiency_frontier
from bankperf.lp import LpProblem, LpStatus, solve_lp
from bankperf.malmquist import malmquist_indices, malmquist_panel, yearly_group_average
from bankperf.metrics import panel_summary
from bankperf.report import analyse_panel, render_report
from bankperf.stats import f_sf, one_way_anova, t_interval, t_two_tailed_p
from bankperf.synthetic import load_bundled_panel

criterion = pytest.mark.criterion


@criterion("t-distribution fidelity")
def test_t_distribution_fidelity():
    assert abs(t_two_tailed_p(0.330, 115) - 0.742) <= 0.002
    assert abs(t_two_tailed_p(-1.385, 115) - 0.169) <= 0.002


@criterion("CI fidelity")
def test_ci_fidelity():
    lo, hi = t_interval(-0.11663, 0.0842009, 115)
    assert abs(lo - -0.28341) <= 5e-4 and abs(hi - 0.050154) <= 5e-4
    lo, hi = t_interval(0.235619, 0.7131116, 115)
    assert abs(lo - -1.17692) <= 5e-3 and abs(hi - 1.648156) <= 5e-3


@criterion("F fidelity")
def test_f_fidelity():
    assert abs(11681.831 / 426 - 27.422) <= 0.001
    assert abs(f_sf(0.503, 2, 426) - 0.605) <= 0.003


@criterion("Table-4 aggregation")
def test_table4_aggregation():
    values = {f"c{i}": 0.9002 for i in range(23)} | {f"i{i}": 0.9942 for i in range(6)}
    groups = {"conventional": [f"c{i}" for i in range(23)], "islamic": [f"i{i}" for i in range(6)]}
    overall = yearly_group_average(values, groups).overall
    assert abs(overall - 0.91965) < 5e-6
    assert abs(overall - 0.91962) < 5e-4


@criterion("Malmquist identity suite")
def test_malmquist_identities():
    rng = np.random.default_rng(101)
    x = rng.uniform(1, 5, (1, 7, 3))
    y = rng.uniform(1, 5, (1, 7, 3))
    same = panel_from_arrays(np.repeat(x, 2, axis=0), np.repeat(y, 2, axis=0))
    for r in malmquist_indices(same, 2010):
        for f in ("effch", "techch", "tfpch", "pech", "sech"):
            assert abs(getattr(r, f) - 1.0) <= 1e-9
    for _ in range(100):
        panel = random_panel(rng, int(rng.integers(1, 11)), int(rng.integers(1, 4)), int(rng.integers(1, 4)), T=2)
        for recs in malmquist_panel(panel).values():
            for r in recs:
                assert abs(r.effch * r.techch - r.tfpch) <= 1e-9
                assert abs(r.pech * r.sech - r.effch) <= 1e-9


@criterion("closed-form Malmquist oracle")
def test_closed_form_oracle():
    rng = np.random.default_rng(202)
    for _ in range(100):
        panel = random_panel(rng, int(rng.integers(1, 11)), 1, 1, T=2)
        x0, y0 = panel.inputs_matrix(2010)[:, 0], panel.outputs_matrix(2010)[:, 0]
        x1, y1 = panel.inputs_matrix(2011)[:, 0], panel.outputs_matrix(2011)[:, 0]
        for r, e in zip(malmquist_indices(panel, 2010), malmquist_1d(x0, y0, x1, y1)):
            for f, v in e.items():
                assert abs(getattr(r, f) - v) <= 1e-9, f


@criterion("LP oracle and DEA frontier")
def test_lp_oracle():
    rng = np.random.default_rng(303)
    for _ in range(100):
        n = int(rng.integers(2, 5))
        c, cons, oracle = random_bounded_lp(
            rng, n, m_ub=int(rng.integers(1, 4)), m_eq=int(rng.integers(0, 2)), m_ge=int(rng.integers(0, 3))
        )
        sol = solve_lp(LpProblem.build(c, cons))
        best, _ = lp_vertex_enumeration(**oracle)
        assert sol.status is LpStatus.OPTIMAL
        assert abs(sol.objective_value - best) <= 1e-6
    for _ in range(100):
        n, k, m = int(rng.integers(1, 11)), int(rng.integers(1, 4)), int(rng.integers(1, 4))
        x, y = rng.uniform(0.5, 10, (n, k)), rng.uniform(0.5, 10, (n, m))
        for rts in RTS:
            eff = efficiency_frontier(TechnologySet(x, y, rts))
            assert np.all(eff > 0) and np.all(eff <= 1.0)
            assert np.any(np.abs(eff - 1.0) <= 1e-9)


@criterion("panel-summary and ANOVA identities")
def test_summary_identities():
    rng = np.random.default_rng(404)
    for _ in range(100):
        n, T = int(rng.integers(2, 30)), int(rng.integers(2, 8))
        x = rng.normal(rng.normal(0, 5), rng.uniform(0.1, 3), (n, T)) + rng.normal(0, 2, (n, 1))
        grand, means = x.mean(), x.mean(axis=1)
        total = np.sum((x - grand) ** 2)
        between = T * np.sum((means - grand) ** 2)
        within = np.sum((x - means[:, None]) ** 2)
        assert abs(total - (between + within)) <= 1e-12 * total
        s = panel_summary(x)
        assert abs(s.within_sd**2 * (n * T - 1) - within) <= 1e-12 * total
        assert abs(s.between_sd**2 * (n - 1) * T - between) <= 1e-12 * total
        r = one_way_anova(list(x.T))
        assert abs(r.ss_total - (r.ss_between + r.ss_within)) <= 1e-12 * r.ss_total


@criterion("end-to-end bundled fixture")
def test_end_to_end():
    start = time.perf_counter()
    outputs = []
    for _ in range(2):
        bundle = analyse_panel(load_bundled_panel())
        files = render_report(bundle, "markdown") | render_report(bundle, "csv")
        outputs.append({k: v.encode("utf-8") for k, v in files.items()})
    elapsed = (time.perf_counter() - start) / 2
    assert elapsed < 5.0
    assert outputs[0] == outputs[1]
    assert bundle.descriptives["ROA"].N == 145
    assert all(bundle.growth[m].n == 116 for m in ("ROA", "TSR", "TFP"))
    assert [po.result.df for po in bundle.pairs] == [115, 115, 115]
