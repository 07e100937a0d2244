"""Balanced bank-year panels: schema binding, CSV ingestion and validation."""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    DuplicateRecord,
    InvalidRecord,
    MissingColumn,
    SchemaError,
    UnbalancedPanel,
    UnparsableCell,
    YearGap,
)

BANK_COLUMN = "bank_id"
YEAR_COLUMN = "year"

_SCHEMA_KEYS = (
    "inputs",
    "outputs",
    "net_income",
    "total_assets",
    "year_end_price",
    "dividend_per_share",
    "group",
)


@dataclass(frozen=True)
class SchemaConfig:
    """Binds CSV column names to the roles the pipeline needs."""

    input_columns: tuple[str, ...]
    output_columns: tuple[str, ...]
    net_income: str = "net_income"
    total_assets: str = "total_assets"
    year_end_price: str = "year_end_price"
    dividend_per_share: str = "dividend_per_share"
    group_column: str = "group"

    def __post_init__(self):
        object.__setattr__(self, "input_columns", tuple(self.input_columns))
        object.__setattr__(self, "output_columns", tuple(self.output_columns))
        if len(self.input_columns) < 1:
            raise SchemaError("at least one input column is required")
        if len(self.output_columns) < 1:
            raise SchemaError("at least one output column is required")
        names = self.all_columns()
        seen = set()
        for name in names:
            if not name:
                raise SchemaError("empty column name in schema")
            if name in seen:
                raise SchemaError(f"column {name!r} is bound to more than one role")
            seen.add(name)

    def financial_columns(self) -> tuple[str, str, str, str]:
        return (self.net_income, self.total_assets, self.year_end_price, self.dividend_per_share)

    def all_columns(self) -> list[str]:
        return [
            BANK_COLUMN,
            YEAR_COLUMN,
            self.group_column,
            *self.input_columns,
            *self.output_columns,
            *self.financial_columns(),
        ]

    @classmethod
    def from_text(cls, text: str) -> SchemaConfig:
        """Parse a ``key = value`` config; list values are comma separated.

        Recognised keys: inputs, outputs, net_income, total_assets,
        year_end_price, dividend_per_share, group. ``#`` starts a comment.
        """
        values: dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SchemaError(f"schema line {lineno}: expected key=value, got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _SCHEMA_KEYS:
                raise SchemaError(f"schema line {lineno}: unknown key {key!r}")
            if key in values:
                raise SchemaError(f"schema line {lineno}: key {key!r} given twice")
            values[key] = value
        for key in ("inputs", "outputs"):
            if key not in values:
                raise SchemaError(f"schema is missing required key {key!r}")

        def split(v: str) -> tuple[str, ...]:
            return tuple(p.strip() for p in v.split(",") if p.strip())

        kwargs = {
            "input_columns": split(values.pop("inputs")),
            "output_columns": split(values.pop("outputs")),
        }
        if "group" in values:
            kwargs["group_column"] = values.pop("group")
        kwargs.update(values)
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: str | Path) -> SchemaConfig:
        return cls.from_text(Path(path).read_text(encoding="utf-8"))

    def to_text(self) -> str:
        return "\n".join(
            [
                f"inputs = {', '.join(self.input_columns)}",
                f"outputs = {', '.join(self.output_columns)}",
                f"net_income = {self.net_income}",
                f"total_assets = {self.total_assets}",
                f"year_end_price = {self.year_end_price}",
                f"dividend_per_share = {self.dividend_per_share}",
                f"group = {self.group_column}",
                "",
            ]
        )


@dataclass(frozen=True)
class BankYearRecord:
    bank_id: str
    year: int
    group: str
    inputs: tuple[float, ...]
    outputs: tuple[float, ...]
    net_income: float
    total_assets: float
    year_end_price: float
    dividend_per_share: float

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(float(v) for v in self.inputs))
        object.__setattr__(self, "outputs", tuple(float(v) for v in self.outputs))


def validate_record(r: BankYearRecord) -> list[str]:
    """Return the list of invariant violations of ``r``; empty means valid."""
    problems = []
    numbers = [*r.inputs, *r.outputs, r.net_income, r.total_assets, r.year_end_price, r.dividend_per_share]
    if not all(math.isfinite(v) for v in numbers):
        problems.append("all numeric fields must be finite")
    if len(r.inputs) < 1:
        problems.append("inputs: at least one input required")
    elif not all(v > 0 for v in r.inputs):
        problems.append("inputs must be strictly positive")
    if len(r.outputs) < 1:
        problems.append("outputs: at least one output required")
    else:
        if not all(v >= 0 for v in r.outputs):
            problems.append("outputs must be non-negative")
        if not max(r.outputs) > 0:
            problems.append("outputs: at least one output strictly positive")
    if not r.total_assets > 0:
        problems.append("total_assets must be strictly positive")
    if not r.year_end_price > 0:
        problems.append("year_end_price must be strictly positive")
    if not r.dividend_per_share >= 0:
        problems.append("dividend_per_share must be non-negative")
    return problems


@dataclass(frozen=True)
class PanelDataset:
    """Balanced panel: exactly one record for every (bank, year) pair.

    ``records`` is stored bank-major, i.e. sorted by (bank_id, year).
    Construct through :func:`parse_panel_csv` or :meth:`from_records`.
    """

    records: tuple[BankYearRecord, ...]
    banks: tuple[str, ...]
    years: tuple[int, ...]
    schema: SchemaConfig
    _index: dict = field(default=None, repr=False, compare=False)

    @classmethod
    def from_records(cls, records: Iterable[BankYearRecord], schema: SchemaConfig) -> PanelDataset:
        records = list(records)
        index: dict[tuple[str, int], BankYearRecord] = {}
        k, m = len(schema.input_columns), len(schema.output_columns)
        for r in records:
            key = (r.bank_id, r.year)
            if key in index:
                raise DuplicateRecord(*key)
            if len(r.inputs) != k or len(r.outputs) != m:
                raise InvalidRecord(
                    None, [f"bank {r.bank_id!r} year {r.year}: expected {k} inputs and {m} outputs"]
                )
            index[key] = r
        if not records:
            raise UnbalancedPanel([])
        banks = tuple(sorted({r.bank_id for r in records}))
        years = tuple(sorted({r.year for r in records}))
        gaps = [y for y0, y in zip(years, years[1:]) if y != y0 + 1]
        if gaps:
            raise YearGap(f"years must be consecutive; gap before {gaps[0]}")
        missing = [(b, y) for b in banks for y in years if (b, y) not in index]
        if missing:
            raise UnbalancedPanel(missing)
        for b in banks:
            groups = {index[(b, y)].group for y in years}
            if len(groups) > 1:
                raise InvalidRecord(None, [f"bank {b!r} changes group across years: {sorted(groups)}"])
        ordered = tuple(index[(b, y)] for b in banks for y in years)
        return cls(records=ordered, banks=banks, years=years, schema=schema, _index=index)

    @property
    def n_banks(self) -> int:
        return len(self.banks)

    @property
    def n_years(self) -> int:
        return len(self.years)

    def record(self, bank_id: str, year: int) -> BankYearRecord:
        return self._index[(bank_id, year)]

    def group_of(self, bank_id: str) -> str:
        return self._index[(bank_id, self.years[0])].group

    def groups(self) -> dict[str, list[str]]:
        """Group label -> member banks, labels in sorted order."""
        out: dict[str, list[str]] = {}
        for b in self.banks:
            out.setdefault(self.group_of(b), []).append(b)
        return dict(sorted(out.items()))

    def inputs_matrix(self, year: int) -> np.ndarray:
        """n x K matrix of DEA inputs for ``year``, rows in bank order."""
        return np.array([self._index[(b, year)].inputs for b in self.banks], dtype=float)

    def outputs_matrix(self, year: int) -> np.ndarray:
        return np.array([self._index[(b, year)].outputs for b in self.banks], dtype=float)

    def field_matrix(self, name: str) -> np.ndarray:
        """n x t matrix of a scalar financial field (e.g. ``"net_income"``)."""
        return np.array(
            [[getattr(self._index[(b, y)], name) for y in self.years] for b in self.banks], dtype=float
        )


def _parse_float(text: str, row: int, column: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise UnparsableCell(row, column, text) from None
    if not math.isfinite(value):
        raise UnparsableCell(row, column, text)
    return value


def parse_panel_csv(text: str | io.TextIOBase, schema: SchemaConfig) -> PanelDataset:
    """Parse and validate a panel CSV.

    Rows may come in any order. Row numbers in error messages are 1-based
    file lines, so the header is line 1.
    """
    stream = io.StringIO(text) if isinstance(text, str) else text
    reader = csv.reader(stream)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise MissingColumn(BANK_COLUMN) from None
    for name in schema.all_columns():
        if name not in header:
            raise MissingColumn(name)
    col = {name: header.index(name) for name in schema.all_columns()}

    records = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) < len(header):
            raise UnparsableCell(lineno, header[len(row)], "")

        def cell(name: str) -> str:
            return row[col[name]].strip()

        bank = cell(BANK_COLUMN)
        if not bank:
            raise UnparsableCell(lineno, BANK_COLUMN, bank)
        year_text = cell(YEAR_COLUMN)
        try:
            year = int(year_text)
        except ValueError:
            raise UnparsableCell(lineno, YEAR_COLUMN, year_text) from None
        group = cell(schema.group_column)
        if not group:
            raise UnparsableCell(lineno, schema.group_column, group)
        rec = BankYearRecord(
            bank_id=bank,
            year=year,
            group=group,
            inputs=tuple(_parse_float(cell(c), lineno, c) for c in schema.input_columns),
            outputs=tuple(_parse_float(cell(c), lineno, c) for c in schema.output_columns),
            net_income=_parse_float(cell(schema.net_income), lineno, schema.net_income),
            total_assets=_parse_float(cell(schema.total_assets), lineno, schema.total_assets),
            year_end_price=_parse_float(cell(schema.year_end_price), lineno, schema.year_end_price),
            dividend_per_share=_parse_float(
                cell(schema.dividend_per_share), lineno, schema.dividend_per_share
            ),
        )
        violations = validate_record(rec)
        if violations:
            raise InvalidRecord(lineno, violations)
        records.append(rec)
    return PanelDataset.from_records(records, schema)


def load_panel(path: str | Path, schema: SchemaConfig) -> PanelDataset:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_panel_csv(fh, schema)


def render_panel_csv(panel: PanelDataset) -> str:
    """Write ``panel`` back to CSV; floats use ``repr`` so parsing is exact."""
    s = panel.schema
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(s.all_columns())
    for r in panel.records:
        writer.writerow(
            [
                r.bank_id,
                r.year,
                r.group,
                *map(repr, r.inputs),
                *map(repr, r.outputs),
                repr(r.net_income),
                repr(r.total_assets),
                repr(r.year_end_price),
                repr(r.dividend_per_share),
            ]
        )
    return buf.getvalue()
