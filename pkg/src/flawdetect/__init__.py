"""Metric-based detection of object-oriented design flaws.

Pipeline: source or facts -> DesignModel -> metric tables -> detection
strategies (filters composed with and/or/butnot) -> suspect reports.
"""

from .catalog import builtin_registry, detect_all
from .frontend import build_model, load_facts, load_sources, model_from_source, save_facts
from .metrics import Metric, MetricTable, compute_table
from .model import DesignModel, validate
from .strategy import SuspectReport, apply_filter, compose, evaluate, parse_file, parse_strategy

__version__ = "0.1.0"
