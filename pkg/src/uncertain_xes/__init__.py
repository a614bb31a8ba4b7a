"""Read, check, write and analyze uncertain event logs in XES."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .model import (
    DETERMINATE,
    STRONG_INDETERMINATE,
    Certain,
    DensitySpec,
    Determinate,
    StrongIndeterminate,
    StrongInterval,
    StrongSet,
    UncertainEvent,
    UncertainLog,
    UncertainTrace,
    WeakDensity,
    WeakIndeterminate,
    WeakMap,
    XesAttribute,
    XesElement,
    flavors,
    is_certain,
    is_strongly_uncertain,
    is_weakly_uncertain,
    make_event,
    trace_epoch,
    unchecked,
)
from .validate import ValidationReport, Violation, validate_log
from .stats import StatsSummary, uncertainty_stats
from .xes import (
    dumps,
    iter_traces,
    parse_log,
    parse_string,
    roundtrip_check,
    serialize_log,
    write_log,
)
from .realization import (
    POSSIBILISTIC,
    UNIFORM,
    ProbabilityEstimate,
    Realization,
    RealizationShape,
    Step,
    enumerate_realizations,
    realization_probability,
    sample_realizations,
    sum_check,
    weighted_realizations,
)
from .inject import (
    InjectionConfig,
    InjectionReport,
    apply_directives,
    inject,
    injection_report,
    parse_directives,
)
