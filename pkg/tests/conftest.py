import numpy as np
import pytest

from bankperf.panel import BankYearRecord, PanelDataset, SchemaConfig


def make_schema(k: int, m: int) -> SchemaConfig:
    return SchemaConfig(
        input_columns=tuple(f"x{i}" for i in range(k)),
        output_columns=tuple(f"y{i}" for i in range(m)),
    )


def panel_from_arrays(inputs, outputs, first_year=2010, groups=None, finance=None) -> PanelDataset:
    """inputs: T x n x K, outputs: T x n x M arrays -> balanced PanelDataset."""
    inputs = np.asarray(inputs, dtype=float)
    outputs = np.asarray(outputs, dtype=float)
    T, n, k = inputs.shape
    m = outputs.shape[2]
    schema = make_schema(k, m)
    recs = []
    for t in range(T):
        for i in range(n):
            ni, ta, price, dps = (1.0 + i + t, 100.0, 10.0 + t + i, 0.5) if finance is None else finance(t, i)
            recs.append(
                BankYearRecord(
                    bank_id=f"B{i:02d}",
                    year=first_year + t,
                    group=(groups[i] if groups else "g1"),
                    inputs=tuple(inputs[t, i]),
                    outputs=tuple(outputs[t, i]),
                    net_income=ni,
                    total_assets=ta,
                    year_end_price=price,
                    dividend_per_share=dps,
                )
            )
    return PanelDataset.from_records(recs, schema)


def random_panel(rng: np.random.Generator, n: int, k: int, m: int, T: int = 2) -> PanelDataset:
    x = rng.uniform(0.5, 10.0, size=(T, n, k))
    y = rng.uniform(0.5, 10.0, size=(T, n, m))
    return panel_from_arrays(x, y)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# acceptance reporting: one PASS/FAIL line per criterion

_criteria: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion reported in the summary")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    name = report.user_properties and dict(report.user_properties).get("criterion")
    if name:
        _criteria[name] = "PASS" if report.passed else "FAIL"


def pytest_runtest_makereport(item, call):
    m = item.get_closest_marker("criterion")
    if m and ("criterion", m.args[0]) not in item.user_properties:
        item.user_properties.append(("criterion", m.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in _criteria.items():
        terminalreporter.write_line(f"{status}  {name}")
