import math
import statistics
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flawdetect.errors import FilterError, SpecError
from flawdetect.strategy import (
    AND,
    BUTNOT,
    OR,
    Between,
    BottomValues,
    BoxPlotLower,
    BoxPlotUpper,
    FilterSpec,
    HigherThan,
    LowerThan,
    Number,
    StdDevAbove,
    StdDevBelow,
    TopValues,
    apply_filter,
    compose,
    format_number,
    tukey_hinges,
)

tables = st.dictionaries(
    st.sampled_from([f"e{i}" for i in range(12)]),
    st.integers(0, 20) | st.fractions(0, 20, max_denominator=6),
)


def test_higher_than_coupling_limit():
    assert apply_filter({"A": 2, "B": 7, "C": 9}, HigherThan(6)) == {"B", "C"}


def test_strict_thresholds():
    assert apply_filter({"A": 6}, HigherThan(6)) == set()
    assert apply_filter({"A": 6}, LowerThan(6)) == set()


def test_top_values_percentage():
    assert apply_filter({"A": 10, "B": 8, "C": 5, "D": 1}, TopValues(percent=50)) == {"A", "B"}


def test_top_values_ties_included():
    assert apply_filter({"A": 5, "B": 5, "C": 1, "D": 0}, TopValues(percent=25)) == {"A", "B"}


def test_top_values_count_clamped():
    assert apply_filter({"A": 1, "B": 2}, TopValues(10)) == {"A", "B"}


def test_bottom_values():
    table = {"A": 10, "B": 8, "C": 5, "D": 1}
    assert apply_filter(table, BottomValues(1)) == {"D"}
    assert apply_filter(table, BottomValues(percent=50)) == {"C", "D"}
    # ceil(0.1 * 4) = 1
    assert apply_filter(table, BottomValues(percent=10)) == {"D"}


def test_relative_filters_on_empty_table():
    assert apply_filter({}, TopValues(percent=50)) == set()
    assert apply_filter({}, BottomValues(3)) == set()


def test_boxplot_upper():
    table = {f"e{i}": v for i, v in enumerate([1, 2, 2, 3, 3, 3, 4, 50], start=1)}
    assert tukey_hinges(table.values()) == (2, Fraction(7, 2))
    assert apply_filter(table, BoxPlotUpper) == {"e8"}
    assert apply_filter(table, BoxPlotLower) == set()


def test_tukey_odd_excludes_median():
    # halves [1, 2] and [4, 5]; median 3 left out
    assert tukey_hinges([5, 1, 3, 2, 4]) == (Fraction(3, 2), Fraction(9, 2))


def test_boxplot_lower():
    table = {"a": -40, "b": 10, "c": 11, "d": 12, "e": 12, "f": 13}
    assert apply_filter(table, BoxPlotLower) == {"a"}


def test_between_strict():
    assert apply_filter({"A": 25}, Between(20, 30)) == {"A"}
    assert apply_filter({"A": 20}, Between(20, 30)) == set()
    assert apply_filter({"A": 30}, Between(20, 30)) == set()


def test_stddev():
    table = {"a": 1, "b": 1, "c": 1, "d": 1, "e": 10}
    mean = statistics.mean(Fraction(v) for v in table.values())
    sigma = statistics.pstdev(table.values())
    assert (mean, sigma) == (Fraction(14, 5), 3.6)
    assert apply_filter(table, StdDevAbove(1)) == {"e"}
    # mean + 2 sigma = 2.8 + 7.2 = 10 exactly; the comparison is strict
    assert apply_filter(table, StdDevAbove(2)) == set()
    assert apply_filter(table, StdDevAbove(Fraction(199, 100))) == {"e"}
    assert apply_filter({"a": 0, "b": 10, "c": 10, "d": 10}, StdDevBelow(1)) == {"a"}


@pytest.mark.parametrize("f, table", [
    (BoxPlotUpper, {"a": 1, "b": 2, "c": 3}),
    (BoxPlotLower, {}),
    (StdDevAbove(1), {"a": 1}),
])
def test_degenerate_statistical(f, table):
    with pytest.raises(FilterError):
        apply_filter(table, f)


@pytest.mark.parametrize("f", [
    TopValues(0),
    TopValues(percent=0),
    TopValues(percent=101),
    BottomValues(Fraction(3, 2)),
    Between(3, 3),
    Between(4, 1),
    StdDevAbove(0),
    FilterSpec("HigherThan", (Number(5, percent=True),)),
    FilterSpec("HigherThan", ()),
    FilterSpec("Frobnicate", (Number(1),)),
])
def test_bad_parameters(f):
    with pytest.raises(SpecError):
        apply_filter({"a": 1}, f)


def test_top_values_hundred_percent():
    table = {"a": 1, "b": 1, "c": 7}
    assert apply_filter(table, TopValues(percent=100)) == set(table)


def test_compose_examples():
    assert compose({"A", "B"}, AND, {"B", "C"}) == {"B"}
    assert compose({"A"}, OR, set()) == {"A"}
    assert compose({"A", "B"}, BUTNOT, {"B"}) == {"A"}
    with pytest.raises(ValueError):
        compose(set(), "xor", set())


@pytest.mark.parametrize("value, text", [
    (Fraction(50), "50"),
    (Fraction(1, 2), "0.5"),
    (Fraction(1, 40), "0.025"),
    (Fraction(-3, 4), "-0.75"),
    (Fraction(1, 3), "1/3"),
])
def test_format_number(value, text):
    assert format_number(value) == text


# -- properties --------------------------------------------------------------

@given(tables, st.fractions(-1, 21), st.fractions(-1, 21))
def test_between_is_two_marginal_filters(table, a, b):
    a, b = sorted((a, b))
    if a == b:
        return
    assert apply_filter(table, Between(a, b)) == compose(
        apply_filter(table, HigherThan(a)), AND, apply_filter(table, LowerThan(b))
    )


@given(tables, st.fractions(-1, 21), st.fractions(-1, 21))
def test_higher_than_monotone(table, t1, t2):
    t1, t2 = sorted((t1, t2))
    assert apply_filter(table, HigherThan(t2)) <= apply_filter(table, HigherThan(t1))
    assert apply_filter(table, LowerThan(t1)) <= apply_filter(table, LowerThan(t2))


@given(tables, st.integers(1, 15))
def test_top_values_size(table, k):
    result = apply_filter(table, TopValues(k))
    assert len(result) >= min(k, len(table))
    cutoff = min(table[e] for e in result) if result else None
    assert all(v < cutoff for e, v in table.items() if e not in result)


@given(tables, st.integers(1, 100))
def test_percentage_uses_ceiling(table, p):
    result = apply_filter(table, BottomValues(percent=p))
    assert len(result) >= math.ceil(p * len(table) / 100)


@given(tables)
def test_top_hundred_is_everything(table):
    assert apply_filter(table, TopValues(percent=100)) == set(table)
    assert apply_filter(table, BottomValues(percent=100)) == set(table)


sets = st.frozensets(st.integers(0, 9))


@given(sets, sets, sets)
def test_compose_algebra(a, b, c):
    assert compose(a, AND, b) == compose(b, AND, a)
    assert compose(a, OR, b) == compose(b, OR, a)
    assert compose(compose(a, AND, b), AND, c) == compose(a, AND, compose(b, AND, c))
    assert compose(compose(a, OR, b), OR, c) == compose(a, OR, compose(b, OR, c))
    universe = a | b | c
    assert compose(a, BUTNOT, b) == compose(a, AND, universe - b)
