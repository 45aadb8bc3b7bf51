"""Filtering, composition and the SOD strategy language."""

from .evaluation import SuspectReport, evaluate, evaluate_expr, lint_strategy, model_size
from .filters import (
    AND,
    BUTNOT,
    OR,
    Between,
    BottomValues,
    BoxPlotLower,
    BoxPlotUpper,
    FilterSpec,
    HigherThan,
    Hole,
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
from .language import (
    And,
    Atom,
    ButNot,
    Compose,
    Or,
    StrategyAst,
    format_expr,
    format_file,
    load_file,
    parse_file,
    parse_strategy,
)
