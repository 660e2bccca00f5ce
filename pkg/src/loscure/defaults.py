"""Default simulator inputs.

The event probabilities are published estimates from a regional first-wave
COVID-19 hospital surveillance dataset; their outcome sets do not sum to 1
(the fate of patients still in ICU at the study end was unknown), which is
why the simulator renormalizes within each outcome set. Everything else
here (duration laws, demographics, the admission pulse) is a synthetic,
documented stand-in: the underlying line list is not public, so no fitted
values are available to ship.
"""

from .simulate import (
    AdmissionCurve,
    Demographics,
    DurationTable,
    SimulationConfig,
    TransitionTable,
)
from .weibull import WeibullParams

# Published event-probability estimates (cure-corrected / empirical).
EVENT_PROBABILITIES = {
    "to_icu": 0.0845,
    "hw_death": 0.1561,
    "hw_discharge": 0.7953,
    "icu_death": 0.2222,
    "icu_discharge": 0.6820,
}
EVENT_PROBABILITIES_EMPIRICAL = {
    "to_icu": 0.0828,
    "hw_death": 0.1503,
    "hw_discharge": 0.7503,
    "icu_death": 0.1963,
    "icu_discharge": 0.6481,
}

# Admitted patients over confirmed cases in the same surveillance window.
P_HOSPITALIZED = 2453 / 10454

DEFAULT_SEED = 20200306


def default_transitions() -> TransitionTable:
    """Transition probabilities from the published event-probability
    estimates; renormalization to proper distributions happens at sampling."""
    return TransitionTable(
        hw_outcomes={
            "to_icu": EVENT_PROBABILITIES["to_icu"],
            "death": EVENT_PROBABILITIES["hw_death"],
            "discharge": EVENT_PROBABILITIES["hw_discharge"],
        },
        icu_outcomes={
            "death": EVENT_PROBABILITIES["icu_death"],
            "discharge": EVENT_PROBABILITIES["icu_discharge"],
        },
    )


def default_durations() -> DurationTable:
    """Synthetic stay-length laws (plausible scales, not fitted to any real
    line list)."""
    return DurationTable(
        entries={
            "hw_to_icu": WeibullParams(shape=1.4, scale=8.0),
            "hw_death": WeibullParams(shape=1.3, scale=9.0),
            "hw_discharge": WeibullParams(shape=1.5, scale=12.0),
            "icu_death": WeibullParams(shape=1.6, scale=16.0),
            "icu_discharge": WeibullParams(shape=1.5, scale=15.0),
        }
    )


def default_demographics() -> Demographics:
    """Synthetic age/sex profile (documented stand-in, not surveillance
    marginals)."""
    return Demographics(
        female_fraction=0.5,
        age_band_weights={"<40": 0.25, "40-59": 0.30, "60-69": 0.20, "70+": 0.25},
    )


def default_admission_curve() -> AdmissionCurve:
    return AdmissionCurve.triangular(peak_day=25, end_day=80)


def default_config(seed: int = DEFAULT_SEED, **overrides) -> SimulationConfig:
    """Baseline unconditional configuration at the reference scale: 1000
    replications of 1000 infected individuals over a 200-day horizon."""
    base = SimulationConfig(
        admission_curve=default_admission_curve(),
        demographics=default_demographics(),
        transitions=default_transitions(),
        durations=default_durations(),
        seed=seed,
    )
    return base.replace(**overrides) if overrides else base


def conditional_default_config(seed: int = DEFAULT_SEED, **overrides) -> SimulationConfig:
    """Conditional counterpart of :func:`default_config` with synthetic
    age/sex effects: older patients stay longer and need the ICU more often,
    under-40s clear the ward faster. Effects are illustrative only."""
    transitions = TransitionTable(
        hw_outcomes=default_transitions().hw_outcomes,
        icu_outcomes=default_transitions().icu_outcomes,
        strata={
            "male:70+": {"hw_outcomes": {"to_icu": 0.12, "death": 0.26, "discharge": 0.62}},
            "female:70+": {"hw_outcomes": {"to_icu": 0.10, "death": 0.22, "discharge": 0.68}},
            "male:<40": {"hw_outcomes": {"to_icu": 0.04, "death": 0.02, "discharge": 0.94}},
            "female:<40": {"hw_outcomes": {"to_icu": 0.03, "death": 0.02, "discharge": 0.95}},
        },
    )
    longer_icu = {
        "icu_death": WeibullParams(shape=1.6, scale=19.0),
        "icu_discharge": WeibullParams(shape=1.5, scale=18.0),
        "hw_discharge": WeibullParams(shape=1.5, scale=14.0),
    }
    shorter_ward = {
        "hw_discharge": WeibullParams(shape=1.5, scale=9.0),
        "icu_discharge": WeibullParams(shape=1.5, scale=12.0),
    }
    durations = DurationTable(
        entries=default_durations().entries,
        strata={
            "male:70+": longer_icu,
            "female:70+": longer_icu,
            "male:<40": shorter_ward,
            "female:<40": shorter_ward,
        },
    )
    base = SimulationConfig(
        admission_curve=default_admission_curve(),
        demographics=default_demographics(),
        transitions=transitions,
        durations=durations,
        seed=seed,
    )
    return base.replace(**overrides) if overrides else base
