"""Data filters over metric tables and the set-based composition operators.

Marginal filters keep one side of a single margin:

* absolute:    HigherThan(t), LowerThan(t)          -- strict comparisons
* relative:    TopValues(k | p%), BottomValues(k | p%)  -- ties at the cutoff kept
* statistical: BoxPlotUpper/Lower (Tukey hinges, 1.5 IQR fence),
               StdDevAbove(k)/StdDevBelow(k) (population sigma)

The only interval filter, Between(a, b), is exactly HigherThan(a) and LowerThan(b).
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..errors import FilterError, SpecError
from ..metrics import MetricTable


@dataclass(frozen=True)
class Number:
    value: Fraction
    percent: bool = False

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    def __str__(self):
        return format_number(self.value) + ("%" if self.percent else "")


@dataclass(frozen=True)
class Hole:
    """Named placeholder (``$p``) filled in by the tuning harness."""

    name: str

    def __str__(self):
        return self.name


Arg = Union[Number, Hole]

# name -> (arity, percent allowed)
FILTERS = {
    "HigherThan": (1, False),
    "LowerThan": (1, False),
    "TopValues": (1, True),
    "BottomValues": (1, True),
    "BoxPlotUpper": (0, False),
    "BoxPlotLower": (0, False),
    "StdDevAbove": (1, False),
    "StdDevBelow": (1, False),
    "Between": (2, False),
}

MIN_BOXPLOT = 4
MIN_STDDEV = 2


def format_number(value: Fraction) -> str:
    """Exact decimal rendering; falls back to ``p/q`` for non-terminating values."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{value.numerator}/{value.denominator}"
    places = max(twos, fives)
    scaled = abs(value) * 10**places
    digits = str(scaled.numerator).rjust(places + 1, "0")
    sign = "-" if value < 0 else ""
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


@dataclass(frozen=True)
class FilterSpec:
    name: str
    args: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def __str__(self):
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(str(a) for a in self.args)})"

    @property
    def holes(self) -> list[str]:
        return [a.name for a in self.args if isinstance(a, Hole)]

    @property
    def is_percentage(self) -> bool:
        return any(isinstance(a, Number) and a.percent for a in self.args)

    def check(self) -> "FilterSpec":
        """Validate parameters; raises SpecError."""
        if self.name not in FILTERS:
            raise SpecError(f"unknown filter {self.name!r}")
        arity, percent_ok = FILTERS[self.name]
        if len(self.args) != arity:
            raise SpecError(f"{self.name} takes {arity} argument(s), got {len(self.args)}")
        for a in self.args:
            if isinstance(a, Hole):
                raise SpecError(f"{self.name}: unfilled parameter {a.name}")
            if a.percent and not percent_ok:
                raise SpecError(f"{self.name} does not accept a percentage")
        if self.name in ("TopValues", "BottomValues"):
            (a,) = self.args
            if a.percent:
                if not 0 < a.value <= 100:
                    raise SpecError(f"{self.name}: percentage {a} outside (0, 100]")
            elif a.value.denominator != 1 or a.value < 1:
                raise SpecError(f"{self.name}: count must be a positive integer, got {a}")
        elif self.name in ("StdDevAbove", "StdDevBelow"):
            if self.args[0].value <= 0:
                raise SpecError(f"{self.name}: k must be positive, got {self.args[0]}")
        elif self.name == "Between":
            lo, hi = self.args
            if not lo.value < hi.value:
                raise SpecError(f"Between requires a < b, got ({lo}, {hi})")
        return self


def HigherThan(t):
    return FilterSpec("HigherThan", (Number(t),))


def LowerThan(t):
    return FilterSpec("LowerThan", (Number(t),))


def TopValues(k=None, *, percent=None):
    return FilterSpec("TopValues", (_count_or_percent(k, percent),))


def BottomValues(k=None, *, percent=None):
    return FilterSpec("BottomValues", (_count_or_percent(k, percent),))


def Between(a, b):
    return FilterSpec("Between", (Number(a), Number(b)))


def StdDevAbove(k):
    return FilterSpec("StdDevAbove", (Number(k),))


def StdDevBelow(k):
    return FilterSpec("StdDevBelow", (Number(k),))


BoxPlotUpper = FilterSpec("BoxPlotUpper")
BoxPlotLower = FilterSpec("BoxPlotLower")


def _count_or_percent(k, percent):
    if (k is None) == (percent is None):
        raise SpecError("give exactly one of k or percent")
    return Number(percent, percent=True) if percent is not None else Number(k)


def _values(table):
    return table.values if isinstance(table, MetricTable) else table


def _relative_count(arg: Number, n: int) -> int:
    if arg.percent:
        return math.ceil(arg.value * n / 100)
    return min(int(arg.value), n)


def tukey_hinges(values) -> tuple[Fraction, Fraction]:
    """Lower and upper hinge; the median is left out of both halves when N is odd."""
    data = sorted(Fraction(v) for v in values)
    half = len(data) // 2
    lower = data[:half]
    upper = data[half + (len(data) % 2):]
    return statistics.median(lower), statistics.median(upper)


def apply_filter(table, f: FilterSpec) -> set[str]:
    """Entities of ``table`` (a MetricTable or plain mapping) kept by ``f``."""
    f.check()
    values = _values(table)
    name, args = f.name, f.args
    if name == "HigherThan":
        t = args[0].value
        return {e for e, v in values.items() if v > t}
    if name == "LowerThan":
        t = args[0].value
        return {e for e, v in values.items() if v < t}
    if name == "Between":
        lo, hi = args[0].value, args[1].value
        return {e for e, v in values.items() if lo < v < hi}
    if name in ("TopValues", "BottomValues"):
        k = _relative_count(args[0], len(values))
        if k == 0:
            return set()
        top = name == "TopValues"
        ordered = sorted(values.values(), reverse=top)
        cutoff = ordered[k - 1]
        if top:
            return {e for e, v in values.items() if v >= cutoff}
        return {e for e, v in values.items() if v <= cutoff}
    if name in ("BoxPlotUpper", "BoxPlotLower"):
        if len(values) < MIN_BOXPLOT:
            raise FilterError(f"{name} needs at least {MIN_BOXPLOT} values, got {len(values)}")
        q1, q3 = tukey_hinges(values.values())
        iqr = q3 - q1
        if name == "BoxPlotUpper":
            fence = q3 + Fraction(3, 2) * iqr
            return {e for e, v in values.items() if v > fence}
        fence = q1 - Fraction(3, 2) * iqr
        return {e for e, v in values.items() if v < fence}
    if name in ("StdDevAbove", "StdDevBelow"):
        if len(values) < MIN_STDDEV:
            raise FilterError(f"{name} needs at least {MIN_STDDEV} values, got {len(values)}")
        data = [Fraction(v) for v in values.values()]
        mean = sum(data) / len(data)
        variance = sum((x - mean) ** 2 for x in data) / len(data)
        # v > mean + k*sigma  <=>  v - mean > 0 and (v - mean)^2 > k^2 * variance; exact
        bound = args[0].value ** 2 * variance
        sign = 1 if name == "StdDevAbove" else -1
        return {
            e for e, v in values.items()
            if sign * (v - mean) > 0 and (v - mean) ** 2 > bound
        }
    raise SpecError(f"unknown filter {name!r}")  # pragma: no cover


AND, OR, BUTNOT = "and", "or", "butnot"
OPERATORS = (AND, OR, BUTNOT)


def compose(a, op: str, b) -> set:
    if op == AND:
        return set(a) & set(b)
    if op == OR:
        return set(a) | set(b)
    if op == BUTNOT:
        return set(a) - set(b)
    raise ValueError(f"unknown composition operator {op!r}")
