"""Deterministic synthetic bank panel used as the bundled fixture.

Banks follow an intermediation layout: deposits, overhead cost and fixed
assets are inputs; loans and investments are outputs. Share prices start
depressed after a market crash and recover slowly, so TSR is mostly
negative early in the window.
"""

from __future__ import annotations

import csv
import io
from importlib import resources
from pathlib import Path

import numpy as np

from .panel import PanelDataset, SchemaConfig, parse_panel_csv

SCHEMA = SchemaConfig(
    input_columns=("deposits", "overhead_cost", "fixed_assets"),
    output_columns=("loans", "investments"),
    net_income="net_income",
    total_assets="total_assets",
    year_end_price="year_end_price",
    dividend_per_share="dividend_per_share",
    group_column="group",
)


def make_synthetic_csv(
    n_conventional: int = 23,
    n_islamic: int = 6,
    first_year: int = 2010,
    n_years: int = 6,
    seed: int = 20160101,
) -> str:
    rng = np.random.default_rng(seed)
    years = list(range(first_year, first_year + n_years))
    # market-wide price factor: crash in the first year, slow recovery
    market = np.cumprod(np.r_[1.0, np.linspace(0.45, 1.1, n_years - 1)])
    rows = []
    labels = ["conventional"] * n_conventional + ["islamic"] * n_islamic
    for i, group in enumerate(labels):
        bank = f"B{i + 1:02d}"
        size = rng.lognormal(mean=np.log(800.0), sigma=0.5)
        growth = rng.normal(0.08, 0.03)
        skill = rng.normal(0.0, 0.08)
        price = rng.uniform(40.0, 120.0)
        for j, year in enumerate(years):
            scale = size * (1.0 + growth) ** j * rng.lognormal(0.0, 0.04)
            deposits = scale * rng.uniform(0.70, 0.85)
            overhead = scale * rng.uniform(0.015, 0.03)
            fixed = scale * rng.uniform(0.01, 0.03)
            eff = np.clip(0.85 + skill + rng.normal(0.0, 0.06) + 0.01 * j, 0.4, 1.2)
            loans = deposits * rng.uniform(0.65, 0.85) * eff
            investments = deposits * rng.uniform(0.12, 0.25) * eff
            total_assets = scale * 1.15
            roa = rng.normal(0.017 - 0.0015 * j, 0.004)
            net_income = round(total_assets * roa, 3)
            if net_income == 0.0:
                net_income = 0.001
            if j > 0:
                shock = market[j] / market[j - 1] if group == "conventional" else market[j] / market[j - 1] * 1.05
                price = max(price * shock * rng.lognormal(0.0, 0.15), 1.0)
            dps = round(max(rng.normal(0.03, 0.015), 0.0) * price, 2)
            rows.append(
                [
                    bank,
                    year,
                    group,
                    f"{deposits:.3f}",
                    f"{overhead:.3f}",
                    f"{fixed:.3f}",
                    f"{loans:.3f}",
                    f"{investments:.3f}",
                    f"{net_income:.3f}",
                    f"{total_assets:.3f}",
                    f"{price:.2f}",
                    f"{dps:.2f}",
                ]
            )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCHEMA.all_columns())
    writer.writerows(rows)
    return buf.getvalue()


def bundled_panel_path() -> Path:
    return Path(str(resources.files("bankperf") / "data" / "synthetic_banks.csv"))


def bundled_schema_path() -> Path:
    return Path(str(resources.files("bankperf") / "data" / "schema.conf"))


def load_bundled_panel() -> PanelDataset:
    schema = SchemaConfig.from_file(bundled_schema_path())
    return parse_panel_csv(bundled_panel_path().read_text(encoding="utf-8"), schema)


def write_bundled_files(directory: str | Path) -> None:
    """Regenerate ``synthetic_banks.csv`` and ``schema.conf`` in ``directory``."""
    d = Path(directory)
    (d / "synthetic_banks.csv").write_text(make_synthetic_csv(), encoding="utf-8")
    (d / "schema.conf").write_text(
        "# DEA inputs/outputs follow the intermediation approach\n" + SCHEMA.to_text(), encoding="utf-8"
    )
