"""Seeded Monte Carlo simulation of patient flow through ward and ICU.

Each replication simulates every infected individual with a fixed budget of
eight uniform draws (hospitalized?, admission day, sex, age band, ward
outcome, ward stay, ICU outcome, ICU stay), so the random stream is aligned
regardless of the path taken and results are reproducible bit for bit from
(seed, replication index) alone. Stays are Weibull draws rounded up to whole
days with a one-day floor; outcome probabilities are renormalized within each
outcome set before sampling. Discharge from the ICU is terminal (no step-down
ward stay), and anything scheduled past the horizon leaves the individual in
the last reached state through the horizon and is flagged as truncated.
"""

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Mapping, NamedTuple, Sequence

import numpy as np

from .backend import BACKEND_NAME, kernels
from .weibull import WeibullParams

HW, ICU, DEAD, DISCHARGED = "HW", "ICU", "DEAD", "DISCHARGED"

SEXES = ("male", "female")
AGE_BAND_LABELS = ("<40", "40-59", "60-69", "70+")
AGE_BAND_EDGES = (0.0, 40.0, 60.0, 70.0, 100.0)  # sampling support per band

HW_OUTCOMES = ("to_icu", "death", "discharge")
ICU_OUTCOMES = ("death", "discharge")
DURATION_KEYS = ("hw_to_icu", "hw_death", "hw_discharge", "icu_death", "icu_discharge")

STATE_COLUMNS = ("hw", "icu", "dead", "discharged", "admitted")


def stratum_key(sex: str, band: str) -> str:
    return f"{sex}:{band}"


STRATA = tuple(stratum_key(sex, band) for sex in SEXES for band in AGE_BAND_LABELS)


def _check_probs(mapping: Mapping[str, float], keys: Sequence[str], what: str) -> dict:
    extra = set(mapping) - set(keys)
    if extra:
        raise ValueError(f"unknown {what} keys: {sorted(extra)}")
    missing = set(keys) - set(mapping)
    if missing:
        raise ValueError(f"missing {what} keys: {sorted(missing)}")
    out = {k: float(mapping[k]) for k in keys}
    for k, v in out.items():
        if not (math.isfinite(v) and 0 <= v <= 1):
            raise ValueError(f"{what}[{k}] must lie in [0, 1], got {v}")
    if sum(out.values()) <= 0:
        raise ValueError(f"{what} must have positive total mass")
    return out


@dataclass(frozen=True)
class TransitionTable:
    """Outcome probabilities leaving the ward and the ICU.

    Raw values need not sum to 1 (published event-probability estimates often
    do not); each outcome set is renormalized before sampling. ``strata`` maps
    'sex:band' keys to partial overrides.
    """

    hw_outcomes: Mapping[str, float]
    icu_outcomes: Mapping[str, float]
    strata: Mapping[str, Mapping[str, Mapping[str, float]]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "hw_outcomes", _check_probs(self.hw_outcomes, HW_OUTCOMES, "hw_outcomes"))
        object.__setattr__(self, "icu_outcomes", _check_probs(self.icu_outcomes, ICU_OUTCOMES, "icu_outcomes"))
        checked = {}
        for key, override in self.strata.items():
            if key not in STRATA:
                raise ValueError(f"unknown stratum {key!r}; expected one of {STRATA}")
            entry = {}
            for part, keys in (("hw_outcomes", HW_OUTCOMES), ("icu_outcomes", ICU_OUTCOMES)):
                if part in override:
                    entry[part] = _check_probs(override[part], keys, f"{key}.{part}")
            unknown = set(override) - {"hw_outcomes", "icu_outcomes"}
            if unknown:
                raise ValueError(f"unknown override keys in {key!r}: {sorted(unknown)}")
            checked[key] = entry
        object.__setattr__(self, "strata", checked)

    def resolved(self, key: str) -> tuple[dict, dict]:
        """Normalized (hw, icu) outcome distributions for a stratum key."""
        override = self.strata.get(key, {})
        hw = override.get("hw_outcomes", self.hw_outcomes)
        icu = override.get("icu_outcomes", self.icu_outcomes)
        return _normalize(hw), _normalize(icu)


def _normalize(probs: Mapping[str, float]) -> dict:
    total = sum(probs.values())
    return {k: v / total for k, v in probs.items()}


@dataclass(frozen=True)
class FixedDuration:
    """Point mass at ``days`` (deterministic stay, mainly for testing); the
    sampler applies the same ceil / 1-day floor as Weibull draws."""

    days: float

    def __post_init__(self):
        object.__setattr__(self, "days", float(self.days))
        if not (math.isfinite(self.days) and self.days >= 0):
            raise ValueError("fixed duration must be finite and nonnegative")


DurationLaw = WeibullParams | FixedDuration


@dataclass(frozen=True)
class DurationTable:
    """One stay-length law per transition, with optional per-stratum
    overrides keyed like :class:`TransitionTable`."""

    entries: Mapping[str, DurationLaw]
    strata: Mapping[str, Mapping[str, DurationLaw]] = field(default_factory=dict)

    def __post_init__(self):
        missing = set(DURATION_KEYS) - set(self.entries)
        if missing:
            raise ValueError(f"missing duration entries: {sorted(missing)}")
        extra = set(self.entries) - set(DURATION_KEYS)
        if extra:
            raise ValueError(f"unknown duration entries: {sorted(extra)}")
        for key, law in self.entries.items():
            _check_law(key, law)
        for skey, override in self.strata.items():
            if skey not in STRATA:
                raise ValueError(f"unknown stratum {skey!r}; expected one of {STRATA}")
            extra = set(override) - set(DURATION_KEYS)
            if extra:
                raise ValueError(f"unknown duration entries in {skey!r}: {sorted(extra)}")
            for key, law in override.items():
                _check_law(f"{skey}.{key}", law)
        object.__setattr__(self, "entries", dict(self.entries))
        object.__setattr__(self, "strata", {k: dict(v) for k, v in self.strata.items()})

    def resolved(self, stratum: str, key: str) -> DurationLaw:
        return self.strata.get(stratum, {}).get(key, self.entries[key])


def _check_law(name: str, law) -> None:
    if not isinstance(law, (WeibullParams, FixedDuration)):
        raise ValueError(f"duration {name} must be WeibullParams or FixedDuration")


@dataclass(frozen=True)
class Demographics:
    """Sex and age-band marginals for simulated individuals. Ages are drawn
    uniformly within the selected band's support."""

    female_fraction: float
    age_band_weights: Mapping[str, float]

    def __post_init__(self):
        ff = float(self.female_fraction)
        if not (math.isfinite(ff) and 0 <= ff <= 1):
            raise ValueError("female_fraction must lie in [0, 1]")
        object.__setattr__(self, "female_fraction", ff)
        object.__setattr__(
            self,
            "age_band_weights",
            _check_probs(self.age_band_weights, AGE_BAND_LABELS, "age_band_weights"),
        )


@dataclass(frozen=True)
class AdmissionCurve:
    """Probability law of the admission day (day 0 = outbreak start). Raw
    weights are normalized at construction."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64).reshape(-1)
        if w.size == 0:
            raise ValueError("admission curve needs at least one day")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise ValueError("admission weights must be finite and nonnegative")
        total = w.sum()
        if total <= 0:
            raise ValueError("admission weights must have positive total mass")
        w = w / total
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @classmethod
    def triangular(cls, peak_day: int, end_day: int) -> "AdmissionCurve":
        """Built-in pulse rising linearly to ``peak_day`` then falling to zero
        at ``end_day`` (stand-in for a real epidemic curve)."""
        if not 0 <= peak_day < end_day:
            raise ValueError("need 0 <= peak_day < end_day")
        days = np.arange(end_day + 1, dtype=np.float64)
        up = (days + 1.0) / (peak_day + 1.0)
        down = (end_day - days) / (end_day - peak_day)
        return cls(np.where(days <= peak_day, up, down))

    @classmethod
    def from_csv(cls, source: str | IO[str]) -> "AdmissionCurve":
        """Read a two-column ``day,weight`` CSV; missing days weigh zero."""
        own = isinstance(source, str)
        handle = open(source, newline="") if own else source
        try:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None or [c.strip() for c in header] != ["day", "weight"]:
                raise ValueError("expected header 'day,weight'")
            rows = [(int(day), float(weight)) for day, weight in reader]
        finally:
            if own:
                handle.close()
        if not rows:
            raise ValueError("admission curve CSV has no rows")
        if min(day for day, _ in rows) < 0:
            raise ValueError("admission days must be nonnegative")
        weights = np.zeros(max(day for day, _ in rows) + 1)
        for day, weight in rows:
            weights[day] += weight
        return cls(weights)


@dataclass(frozen=True)
class SimulationConfig:
    """Everything one outbreak simulation needs; serializable as one JSON
    document. ``seed`` plus the replication index fully determine every
    random stream."""

    admission_curve: AdmissionCurve
    demographics: Demographics
    transitions: TransitionTable
    durations: DurationTable
    seed: int
    n_infected: int = 1000
    n_replications: int = 1000
    horizon_days: int = 200
    p_hospitalized: float = 2453 / 10454

    def __post_init__(self):
        for name in ("n_infected", "n_replications", "horizon_days"):
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise ValueError(f"{name} must be a positive integer")
        if not (0 <= self.p_hospitalized <= 1):
            raise ValueError("p_hospitalized must lie in [0, 1]")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.admission_curve.weights.size > self.horizon_days + 1:
            raise ValueError("admission curve extends past the horizon")

    def replace(self, **changes) -> "SimulationConfig":
        from dataclasses import replace as _replace

        return _replace(self, **changes)

    def to_json_dict(self) -> dict:
        return {
            "n_infected": self.n_infected,
            "n_replications": self.n_replications,
            "horizon_days": self.horizon_days,
            "p_hospitalized": self.p_hospitalized,
            "seed": self.seed,
            "admission_curve": {"weights": self.admission_curve.weights.tolist()},
            "demographics": {
                "female_fraction": self.demographics.female_fraction,
                "age_band_weights": dict(self.demographics.age_band_weights),
            },
            "transitions": {
                "hw_outcomes": dict(self.transitions.hw_outcomes),
                "icu_outcomes": dict(self.transitions.icu_outcomes),
                "strata": {k: {p: dict(v) for p, v in o.items()} for k, o in self.transitions.strata.items()},
            },
            "durations": {
                **{k: _law_to_json(v) for k, v in self.durations.entries.items()},
                "strata": {
                    sk: {k: _law_to_json(v) for k, v in ov.items()}
                    for sk, ov in self.durations.strata.items()
                },
            },
        }

    def write_json(self, dest: str | IO[str]) -> None:
        text = json.dumps(self.to_json_dict(), indent=2) + "\n"
        if isinstance(dest, str):
            with open(dest, "w") as handle:
                handle.write(text)
        else:
            dest.write(text)

    @classmethod
    def from_json_dict(cls, doc: Mapping, base_dir: str | None = None) -> "SimulationConfig":
        adm = doc["admission_curve"]
        if "weights" in adm:
            curve = AdmissionCurve(np.asarray(adm["weights"], dtype=np.float64))
        elif "csv" in adm:
            import os

            path = adm["csv"]
            if base_dir is not None and not os.path.isabs(path):
                path = os.path.join(base_dir, path)
            curve = AdmissionCurve.from_csv(path)
        elif "triangular" in adm:
            curve = AdmissionCurve.triangular(
                int(adm["triangular"]["peak_day"]), int(adm["triangular"]["end_day"])
            )
        else:
            raise ValueError("admission_curve needs 'weights', 'csv', or 'triangular'")
        demo = Demographics(
            female_fraction=doc["demographics"]["female_fraction"],
            age_band_weights=doc["demographics"]["age_band_weights"],
        )
        trans_doc = doc["transitions"]
        transitions = TransitionTable(
            hw_outcomes=trans_doc["hw_outcomes"],
            icu_outcomes=trans_doc["icu_outcomes"],
            strata=trans_doc.get("strata", {}),
        )
        dur_doc = dict(doc["durations"])
        strata_doc = dur_doc.pop("strata", {})
        durations = DurationTable(
            entries={k: _law_from_json(v) for k, v in dur_doc.items()},
            strata={sk: {k: _law_from_json(v) for k, v in ov.items()} for sk, ov in strata_doc.items()},
        )
        return cls(
            admission_curve=curve,
            demographics=demo,
            transitions=transitions,
            durations=durations,
            seed=int(doc["seed"]),
            n_infected=int(doc.get("n_infected", 1000)),
            n_replications=int(doc.get("n_replications", 1000)),
            horizon_days=int(doc.get("horizon_days", 200)),
            p_hospitalized=float(doc.get("p_hospitalized", 2453 / 10454)),
        )

    @classmethod
    def from_file(cls, path: str) -> "SimulationConfig":
        import os

        with open(path) as handle:
            doc = json.load(handle)
        return cls.from_json_dict(doc, base_dir=os.path.dirname(os.path.abspath(path)))


def _law_to_json(law: DurationLaw) -> dict:
    if isinstance(law, FixedDuration):
        return {"fixed_days": law.days}
    return {"shape": law.shape, "scale": law.scale}


def _law_from_json(doc: Mapping) -> DurationLaw:
    if "fixed_days" in doc:
        return FixedDuration(days=doc["fixed_days"])
    return WeibullParams(shape=doc["shape"], scale=doc["scale"])


@dataclass(frozen=True)
class _Tables:
    """Config compiled to the flat arrays the kernels consume."""

    p_hosp: float
    adm_cdf: np.ndarray
    female_frac: float
    band_cdf: np.ndarray
    hw_cdf: np.ndarray
    icu_cdf: np.ndarray
    durations: np.ndarray
    horizon: int


def compile_tables(config: SimulationConfig, demographics: Demographics | None = None) -> _Tables:
    demo = demographics if demographics is not None else config.demographics
    adm_cdf = np.cumsum(config.admission_curve.weights)
    adm_cdf[-1] = 1.0
    band_weights = np.array([demo.age_band_weights[b] for b in AGE_BAND_LABELS])
    band_cdf = np.cumsum(band_weights / band_weights.sum())
    band_cdf[-1] = 1.0
    n_strata = len(STRATA)
    hw_cdf = np.empty((n_strata, 2))
    icu_cdf = np.empty((n_strata, 1))
    durations = np.empty((n_strata, len(DURATION_KEYS), 3))
    for s, key in enumerate(STRATA):
        hw, icu = config.transitions.resolved(key)
        hw_cdf[s, 0] = hw["to_icu"]
        hw_cdf[s, 1] = hw["to_icu"] + hw["death"]
        icu_cdf[s, 0] = icu["death"]
        for t, dkey in enumerate(DURATION_KEYS):
            law = config.durations.resolved(key, dkey)
            if isinstance(law, FixedDuration):
                durations[s, t] = (math.nan, math.nan, law.days)
            else:
                durations[s, t] = (law.shape, law.scale, -1.0)
    return _Tables(
        p_hosp=config.p_hospitalized,
        adm_cdf=adm_cdf,
        female_frac=demo.female_fraction,
        band_cdf=band_cdf,
        hw_cdf=hw_cdf,
        icu_cdf=icu_cdf,
        durations=durations,
        horizon=config.horizon_days,
    )


@dataclass(frozen=True)
class SimulatedIndividual:
    """One simulated subject: demographics, admission, and the visited states
    as (state, entry day) pairs. DEAD and DISCHARGED are absorbing."""

    sex: str
    age: float
    hospitalized: bool
    admission_day: int | None
    trajectory: tuple[tuple[str, int], ...]


def simulate_individual(
    demographics: Demographics, config: SimulationConfig, rng: np.random.Generator
) -> SimulatedIndividual:
    """Simulate one infected individual, drawing its fixed budget of eight
    uniforms from ``rng``. Stay lengths are clipped just past the horizon
    (longer stays count as truncated in the occupancy tallies anyway)."""
    tables = compile_tables(config, demographics)
    return _individual_from_uniforms(tables, rng.random(8))


def _individual_from_uniforms(tables: _Tables, u: np.ndarray) -> SimulatedIndividual:
    """Scalar reference for the replication kernels: identical draws,
    identical clipping, one individual at a time."""
    sex = "female" if u[2] < tables.female_frac else "male"
    band = int(np.minimum(np.searchsorted(tables.band_cdf, u[3], side="right"), tables.band_cdf.size - 1))
    lo = 0.0 if band == 0 else tables.band_cdf[band - 1]
    hi = tables.band_cdf[band]
    frac = (u[3] - lo) / (hi - lo) if hi > lo else 0.0
    age = AGE_BAND_EDGES[band] + frac * (AGE_BAND_EDGES[band + 1] - AGE_BAND_EDGES[band])
    if u[0] >= tables.p_hosp:
        return SimulatedIndividual(sex, age, False, None, ())
    a = int(np.minimum(np.searchsorted(tables.adm_cdf, u[1], side="right"), tables.adm_cdf.size - 1))
    s = (1 if u[2] < tables.female_frac else 0) * tables.band_cdf.size + band

    hw_outcome = int(u[4] >= tables.hw_cdf[s, 0]) + int(u[4] >= tables.hw_cdf[s, 1])
    d_hw = _scalar_stay(tables, s, hw_outcome, u[5])
    trajectory = [(HW, a)]
    if hw_outcome == 0:
        icu_day = a + d_hw
        icu_outcome = int(u[6] >= tables.icu_cdf[s, 0])
        d_icu = _scalar_stay(tables, s, 3 + icu_outcome, u[7])
        trajectory.append((ICU, icu_day))
        trajectory.append((DEAD if icu_outcome == 0 else DISCHARGED, icu_day + d_icu))
    else:
        trajectory.append((DEAD if hw_outcome == 1 else DISCHARGED, a + d_hw))
    return SimulatedIndividual(sex, age, True, a, tuple(trajectory))


def _scalar_stay(tables: _Tables, s: int, t: int, u: float) -> int:
    shape, scale, fixed = tables.durations[s, t]
    if fixed >= 0.0:
        raw = fixed
    else:
        raw = scale * (-math.log(max(u, 1e-300))) ** (1.0 / shape)
    return int(min(max(math.ceil(raw), 1.0), tables.horizon + 2.0))


class CapacityRow(NamedTuple):
    resource: str
    capacity: int
    days_exceeded: int


@dataclass(frozen=True)
class OccupancySeries:
    """Daily occupancy and outcome counts per replication plus cross-
    replication aggregates.

    ``counts[r, d]`` holds (ward, ICU, cumulative dead, cumulative
    discharged, cumulative admitted) for replication r on day d; days run
    from 0 through ``horizon_days`` inclusive.
    """

    horizon_days: int
    n_infected: int
    seed: int
    counts: np.ndarray
    hospitalized: np.ndarray
    truncated: np.ndarray
    backend: str

    @property
    def days(self) -> np.ndarray:
        return np.arange(self.horizon_days + 1)

    @property
    def n_replications(self) -> int:
        return int(self.counts.shape[0])

    @cached_property
    def mean(self) -> np.ndarray:
        """Across-replication mean of the four state counts, (days, 4)."""
        return self.counts[:, :, :4].mean(axis=0)

    @cached_property
    def sd(self) -> np.ndarray:
        """Across-replication sample standard deviation, (days, 4)."""
        if self.n_replications < 2:
            return np.zeros_like(self.mean)
        return self.counts[:, :, :4].std(axis=0, ddof=1)

    @property
    def truncation_occurred(self) -> bool:
        return bool(self.truncated.sum() > 0)

    def write_occupancy_csv(self, dest: str | IO[str]) -> None:
        own = isinstance(dest, str)
        handle = open(dest, "w", newline="") if own else dest
        try:
            handle.write(
                "day,mean_hw,sd_hw,mean_icu,sd_icu,mean_dead,sd_dead,mean_discharged,sd_discharged\n"
            )
            for d in range(self.horizon_days + 1):
                cells = [str(d)]
                for state in range(4):
                    cells.append(repr(float(self.mean[d, state])))
                    cells.append(repr(float(self.sd[d, state])))
                handle.write(",".join(cells) + "\n")
        finally:
            if own:
                handle.close()

    def metadata(self) -> dict:
        return {
            "seed": self.seed,
            "n_replications": self.n_replications,
            "n_infected": self.n_infected,
            "horizon_days": self.horizon_days,
            "backend": self.backend,
            "truncation_occurred": self.truncation_occurred,
            "truncated_individuals_total": int(self.truncated.sum()),
            "exceedance_basis": "mean",
        }

    def write_metadata(self, dest: str | IO[str]) -> None:
        text = json.dumps(self.metadata(), indent=2) + "\n"
        if isinstance(dest, str):
            with open(dest, "w") as handle:
                handle.write(text)
        else:
            dest.write(text)


def simulate_outbreak(config: SimulationConfig, workers: int = 1) -> OccupancySeries:
    """Run all replications. Each replication's stream derives from
    (seed, replication index), so output is identical regardless of
    ``workers`` or scheduling."""
    tables = compile_tables(config)
    reps = config.n_replications
    horizon = config.horizon_days
    counts = np.zeros((reps, horizon + 1, 5), dtype=np.int64)
    hospitalized = np.zeros(reps, dtype=np.int64)
    truncated = np.zeros(reps, dtype=np.int64)

    def run(r: int) -> None:
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=config.seed, spawn_key=(r,))))
        u = rng.random((config.n_infected, 8))
        c, n_hosp, n_trunc = kernels.simulate_replication(
            u,
            tables.p_hosp,
            tables.adm_cdf,
            tables.female_frac,
            tables.band_cdf,
            tables.hw_cdf,
            tables.icu_cdf,
            tables.durations,
            tables.horizon,
        )
        counts[r] = c
        hospitalized[r] = n_hosp
        truncated[r] = n_trunc

    if workers <= 1:
        for r in range(reps):
            run(r)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, range(reps)))

    counts.flags.writeable = False
    hospitalized.flags.writeable = False
    truncated.flags.writeable = False
    return OccupancySeries(
        horizon_days=horizon,
        n_infected=config.n_infected,
        seed=config.seed,
        counts=counts,
        hospitalized=hospitalized,
        truncated=truncated,
        backend=BACKEND_NAME,
    )


def capacity_excess(
    series: OccupancySeries,
    hw_capacities: Sequence[int] = range(15, 91),
    icu_capacities: Sequence[int] = range(5, 16),
) -> list[CapacityRow]:
    """Days on which mean demand strictly exceeds each candidate capacity."""
    hw_caps = list(hw_capacities)
    icu_caps = list(icu_capacities)
    if not hw_caps or not icu_caps:
        raise ValueError("empty capacity range")
    mean_hw = series.mean[:, 0]
    mean_icu = series.mean[:, 1]
    rows = [CapacityRow("hw", int(c), int(np.count_nonzero(mean_hw > c))) for c in hw_caps]
    rows += [CapacityRow("icu", int(c), int(np.count_nonzero(mean_icu > c))) for c in icu_caps]
    return rows


def write_capacity_csv(rows: Sequence[CapacityRow], dest: str | IO[str]) -> None:
    own = isinstance(dest, str)
    handle = open(dest, "w", newline="") if own else dest
    try:
        handle.write("resource,capacity,days_exceeded\n")
        for row in rows:
            handle.write(f"{row.resource},{row.capacity},{row.days_exceeded}\n")
    finally:
        if own:
            handle.close()


@dataclass(frozen=True)
class ComparisonResult:
    """Paired unconditional-vs-conditional runs sharing population, horizon,
    and seed."""

    unconditional: OccupancySeries
    conditional: OccupancySeries

    @cached_property
    def mean_difference(self) -> np.ndarray:
        """Per-day conditional-minus-unconditional mean, (days, 4)."""
        return self.conditional.mean - self.unconditional.mean

    def summary(self) -> dict:
        diff = self.mean_difference
        out = {}
        for i, state in enumerate(STATE_COLUMNS[:4]):
            out[state] = {
                "max_abs_diff": float(np.max(np.abs(diff[:, i]))),
                "mean_abs_diff": float(np.mean(np.abs(diff[:, i]))),
            }
        return out

    def capacity_tables(
        self,
        hw_capacities: Sequence[int] = range(15, 91),
        icu_capacities: Sequence[int] = range(5, 16),
    ) -> dict[str, list[CapacityRow]]:
        return {
            "unconditional": capacity_excess(self.unconditional, hw_capacities, icu_capacities),
            "conditional": capacity_excess(self.conditional, hw_capacities, icu_capacities),
        }


def compare_conditional(
    config_unconditional: SimulationConfig,
    config_conditional: SimulationConfig,
    workers: int = 1,
) -> ComparisonResult:
    """Run both configurations (which must share n_infected, horizon, and
    seed) and pair the results for divergence analysis."""
    for name in ("n_infected", "horizon_days", "seed"):
        a = getattr(config_unconditional, name)
        b = getattr(config_conditional, name)
        if a != b:
            raise ValueError(f"configs must share {name} (got {a} vs {b})")
    return ComparisonResult(
        unconditional=simulate_outbreak(config_unconditional, workers=workers),
        conditional=simulate_outbreak(config_conditional, workers=workers),
    )
