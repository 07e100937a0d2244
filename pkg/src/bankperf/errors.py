"""Exception hierarchy.

Two roots: :class:`InputError` for bad files, configs and arguments, and
:class:`NumericError` for computations that cannot produce a defined value.
The CLI maps them to exit codes 1 and 2.
"""

from __future__ import annotations


class BankPerfError(Exception):
    """Base class for every error raised by this package."""


class InputError(BankPerfError, ValueError):
    pass


class NumericError(BankPerfError, ArithmeticError):
    pass


# panel ingestion


class SchemaError(InputError):
    pass


class MissingColumn(InputError):
    def __init__(self, name: str):
        super().__init__(f"missing column {name!r}")
        self.name = name


class UnparsableCell(InputError):
    def __init__(self, row: int, column: str, value: str):
        super().__init__(f"row {row}, column {column!r}: cannot parse {value!r}")
        self.row = row
        self.column = column
        self.value = value


class DuplicateRecord(InputError):
    def __init__(self, bank_id: str, year: int):
        super().__init__(f"duplicate record for bank {bank_id!r}, year {year}")
        self.bank_id = bank_id
        self.year = year


class UnbalancedPanel(InputError):
    def __init__(self, missing: list[tuple[str, int]]):
        shown = ", ".join(f"({b}, {y})" for b, y in missing[:10])
        more = f" and {len(missing) - 10} more" if len(missing) > 10 else ""
        super().__init__(f"unbalanced panel, missing (bank, year): {shown}{more}")
        self.missing = missing


class InvalidRecord(InputError):
    def __init__(self, row: int | None, violations: list[str]):
        where = f"row {row}: " if row is not None else ""
        super().__init__(where + "; ".join(violations))
        self.row = row
        self.violations = violations


class YearGap(InputError):
    pass


# linear programming / DEA


class MalformedProblem(InputError):
    pass


class MalformedInput(InputError):
    pass


class InfeasibleCrossPeriod(NumericError):
    pass


class UndefinedDistance(NumericError):
    """The radial expansion factor is zero, so the distance is infinite."""


class MissingPeriod(InputError):
    pass


# metrics


class NonPositiveAssets(InputError):
    pass


class NonPositivePrice(InputError):
    pass


class ZeroBase(NumericError):
    pass


class EmptyGroup(InputError):
    pass


# statistics


class DomainError(InputError):
    pass


class ZeroWithinVariance(NumericError):
    pass


class ZeroVarianceDifferences(NumericError):
    pass


class LengthMismatch(InputError):
    pass


class InsufficientData(NumericError):
    pass


class UnwritableOutput(BankPerfError, OSError):
    pass
