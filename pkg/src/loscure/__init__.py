"""loscure: length-of-stay estimation under partially known cure status and
Monte Carlo hospital demand simulation.

The estimators quantify how long admitted patients stay in the ward or ICU
and how likely each terminal outcome is, honestly handling follow-ups cut
short by the end of observation. The simulator turns those estimates into
daily bed demand forecasts with capacity-exceedance summaries.
"""

from .backend import active_backend
from .conditional import (
    CovariateQuery,
    KernelConfig,
    beran_estimate,
    conditional_event_probability,
    conditional_latency,
    npmcm_conditional_estimate,
    rule_of_thumb_bandwidth,
)
from .curves import CureModelEstimate, SurvivalCurve
from .linelist import (
    Endpoint,
    EndpointDataset,
    LineListRecord,
    LineListSummary,
    ParseResult,
    RowIssue,
    derive_endpoint,
    parse_linelist,
    summarize,
)
from .observations import Observation, read_observations_csv, write_observations_csv
from .simulate import (
    AdmissionCurve,
    CapacityRow,
    ComparisonResult,
    Demographics,
    DurationTable,
    FixedDuration,
    OccupancySeries,
    SimulatedIndividual,
    SimulationConfig,
    TransitionTable,
    capacity_excess,
    compare_conditional,
    simulate_individual,
    simulate_outbreak,
    write_capacity_csv,
)
from .survival import (
    empirical_estimate,
    empirical_event_probability,
    event_probability,
    km_estimate,
    km_estimate_reduced,
    latency,
    npmcm_estimate,
)
from .weibull import FitReport, WeibullParams, fit_weibull, weibull_sample, weibull_survival

__version__ = "0.1.0"

__all__ = [
    "AdmissionCurve",
    "CapacityRow",
    "ComparisonResult",
    "CovariateQuery",
    "CureModelEstimate",
    "Demographics",
    "DurationTable",
    "Endpoint",
    "EndpointDataset",
    "FitReport",
    "FixedDuration",
    "KernelConfig",
    "LineListRecord",
    "LineListSummary",
    "Observation",
    "OccupancySeries",
    "ParseResult",
    "RowIssue",
    "SimulatedIndividual",
    "SimulationConfig",
    "SurvivalCurve",
    "TransitionTable",
    "WeibullParams",
    "active_backend",
    "beran_estimate",
    "capacity_excess",
    "compare_conditional",
    "conditional_event_probability",
    "conditional_latency",
    "derive_endpoint",
    "empirical_estimate",
    "empirical_event_probability",
    "event_probability",
    "fit_weibull",
    "km_estimate",
    "km_estimate_reduced",
    "latency",
    "npmcm_conditional_estimate",
    "npmcm_estimate",
    "parse_linelist",
    "read_observations_csv",
    "rule_of_thumb_bandwidth",
    "simulate_individual",
    "simulate_outbreak",
    "summarize",
    "weibull_sample",
    "weibull_survival",
    "write_capacity_csv",
    "write_observations_csv",
]
