"""Symbolic systems over group models: patterns, measures, observables and shadowing."""

from folnerkit.shift.measures import (
    BernoulliMeasure,
    EmpiricalMeasure,
    MeasureModel,
    sample_pattern,
    sample_patterns,
)
from folnerkit.shift.metric import BowenWindow, MetricDistance, bowen_window, metric_dist
from folnerkit.shift.observables import Observable, birkhoff_avg, birkhoff_sum
from folnerkit.shift.patterns import Pattern, dump_pattern, load_pattern, shift_pattern
from folnerkit.shift.specification import ShadowResult, weak_spec_shadow
from folnerkit.shift.system import ShiftSystem, count_admissible, full_shift, is_admissible

__all__ = [
    "BernoulliMeasure",
    "BowenWindow",
    "EmpiricalMeasure",
    "MeasureModel",
    "MetricDistance",
    "Observable",
    "Pattern",
    "ShadowResult",
    "ShiftSystem",
    "birkhoff_avg",
    "birkhoff_sum",
    "bowen_window",
    "count_admissible",
    "dump_pattern",
    "full_shift",
    "is_admissible",
    "load_pattern",
    "metric_dist",
    "sample_pattern",
    "sample_patterns",
    "shift_pattern",
    "weak_spec_shadow",
]
