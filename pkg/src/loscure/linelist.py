"""Line-list ingestion: parse surveillance CSV records and derive the
endpoint-specific observation sets.

Each endpoint classifies every admitted patient as exactly one of event /
known cure / censored. A patient who leaves the ward for a terminal outcome
or the ICU can no longer experience the other ward endpoints, so they are a
known cure there (at the same exit time); a patient still in house at the
study end is censored. ICU endpoints use the status at the first ICU exit;
total hospitalization has no cures because everyone leaves eventually.
"""

import csv
from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from typing import IO, Iterable, Mapping, Sequence

from .observations import SEXES, Observation
from .simulate import AGE_BAND_EDGES, AGE_BAND_LABELS, Demographics


class Endpoint(str, Enum):
    HW_TO_ICU = "hw-to-icu"
    HW_DEATH = "hw-death"
    HW_DISCHARGE = "hw-discharge"
    ICU_DEATH = "icu-death"
    ICU_DISCHARGE = "icu-discharge"
    HOSPITAL_TOTAL = "hospital-total"


LINELIST_COLUMNS = (
    "id",
    "sex",
    "age",
    "date_diagnosis",
    "date_hw_admission",
    "date_icu_admission",
    "date_icu_exit",
    "date_discharge",
    "date_death",
)

_DATE_COLUMNS = LINELIST_COLUMNS[3:]


@dataclass(frozen=True)
class LineListRecord:
    """One patient's validated surveillance row; absent dates are None."""

    id: str
    sex: str | None = None
    age: float | None = None
    date_diagnosis: date | None = None
    date_hw_admission: date | None = None
    date_icu_admission: date | None = None
    date_icu_exit: date | None = None
    date_discharge: date | None = None
    date_death: date | None = None


@dataclass(frozen=True)
class RowIssue:
    """Why a physical CSV row was rejected (row 1 is the header)."""

    row: int
    column: str
    message: str

    def __str__(self) -> str:
        return f"row {self.row}, column {self.column}: {self.message}"


@dataclass
class ParseResult:
    records: list[LineListRecord]
    rejected: list[RowIssue] = field(default_factory=list)


def parse_linelist(source: str | IO[str] | Iterable[str]) -> ParseResult:
    """Parse and validate a line-list CSV.

    Structural problems (missing columns) raise; per-row problems
    (unparseable fields, inconsistent chronology) reject the row with a
    row-numbered diagnostic and parsing continues. When an id appears on
    several rows, the row with the earliest ward admission is kept.
    """
    own = isinstance(source, str)
    handle = open(source, newline="") if own else source
    try:
        reader = csv.DictReader(handle)
        missing = set(LINELIST_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"missing required columns: {sorted(missing)}")
        records: list[tuple[int, LineListRecord]] = []
        rejected: list[RowIssue] = []
        for row_no, row in enumerate(reader, start=2):
            parsed = _parse_row(row_no, row, rejected)
            if parsed is not None:
                records.append((row_no, parsed))
    finally:
        if own:
            handle.close()
    kept = _first_admissions(records, rejected)
    return ParseResult(records=kept, rejected=rejected)


def _parse_row(row_no: int, row: Mapping[str, str], rejected: list[RowIssue]) -> LineListRecord | None:
    rid = (row.get("id") or "").strip()
    if not rid:
        rejected.append(RowIssue(row_no, "id", "empty id"))
        return None
    sex = (row.get("sex") or "").strip() or None
    if sex is not None and sex not in SEXES:
        rejected.append(RowIssue(row_no, "sex", f"unknown sex {sex!r}"))
        return None
    age_text = (row.get("age") or "").strip()
    age = None
    if age_text:
        try:
            age = float(age_text)
        except ValueError:
            rejected.append(RowIssue(row_no, "age", f"unparseable age {age_text!r}"))
            return None
        if not 0 <= age <= 130:
            rejected.append(RowIssue(row_no, "age", f"age out of range: {age}"))
            return None
    dates: dict[str, date | None] = {}
    for column in _DATE_COLUMNS:
        text = (row.get(column) or "").strip()
        if not text:
            dates[column] = None
            continue
        try:
            dates[column] = date.fromisoformat(text)
        except ValueError:
            rejected.append(RowIssue(row_no, column, f"unparseable date {text!r}"))
            return None
    issue = _chronology_issue(dates)
    if issue is not None:
        rejected.append(RowIssue(row_no, issue[0], issue[1]))
        return None
    return LineListRecord(id=rid, sex=sex, age=age, **dates)


def _chronology_issue(d: Mapping[str, date | None]) -> tuple[str, str] | None:
    adm = d["date_hw_admission"]
    icu = d["date_icu_admission"]
    icu_exit = d["date_icu_exit"]
    discharge = d["date_discharge"]
    death = d["date_death"]
    if death is not None and discharge is not None:
        return "date_death", "both death and discharge present"
    if icu_exit is not None and icu is None:
        return "date_icu_exit", "ICU exit without ICU admission"
    ordered = [
        ("date_icu_admission", adm, icu),
        ("date_icu_exit", icu, icu_exit),
        ("date_death", adm, death),
        ("date_discharge", adm, discharge),
        ("date_death", icu, death),
        ("date_discharge", icu, discharge),
        ("date_death", icu_exit, death),
        ("date_discharge", icu_exit, discharge),
    ]
    for column, earlier, later in ordered:
        if earlier is not None and later is not None and later < earlier:
            return column, "inconsistent chronology"
    return None


def _first_admissions(
    records: list[tuple[int, LineListRecord]], rejected: list[RowIssue]
) -> list[LineListRecord]:
    best: dict[str, tuple[int, LineListRecord]] = {}
    order: list[str] = []
    for row_no, record in records:
        key = record.id
        if key not in best:
            best[key] = (row_no, record)
            order.append(key)
            continue
        kept_row, kept = best[key]
        if _admission_sort_key(record) < _admission_sort_key(kept):
            rejected.append(RowIssue(kept_row, "id", f"duplicate id {key!r}; keeping earliest admission"))
            best[key] = (row_no, record)
        else:
            rejected.append(RowIssue(row_no, "id", f"duplicate id {key!r}; keeping earliest admission"))
    return [best[key][1] for key in order]


def _admission_sort_key(record: LineListRecord) -> tuple:
    admission = record.date_hw_admission or record.date_icu_admission
    return (admission is None, admission or date.max)


@dataclass(frozen=True)
class EndpointDataset:
    """Observations derived for one endpoint, plus how many records were
    skipped because the endpoint does not apply to them (e.g. ICU endpoints
    for never-ICU patients)."""

    endpoint: Endpoint
    observations: tuple[Observation, ...]
    n_skipped: int = 0


class _Course:
    """Resolved hospital course of one record relative to the study end."""

    __slots__ = ("entry", "icu", "icu_exit_alive", "died_in_icu", "hw_exit", "hw_exit_kind", "final_exit")

    def __init__(self, record: LineListRecord, study_end: date):
        for column in _DATE_COLUMNS:
            value = getattr(record, column)
            if value is not None and value > study_end:
                raise ValueError(f"record {record.id!r} has {column} after study_end")
        self.entry = record.date_hw_admission or record.date_icu_admission
        self.icu = record.date_icu_admission
        death, discharge = record.date_death, record.date_discharge
        if self.icu is not None:
            exit_date = record.date_icu_exit
            if exit_date is None and discharge is not None:
                exit_date = discharge  # discharge implies leaving the ICU alive
            self.died_in_icu = death is not None and (exit_date is None or exit_date == death)
            self.icu_exit_alive = None if self.died_in_icu else exit_date
        else:
            self.died_in_icu = False
            self.icu_exit_alive = None
        # Terminal ward outcome only applies when the ICU was never entered.
        if self.icu is None and death is not None:
            self.hw_exit, self.hw_exit_kind = death, "death"
        elif self.icu is None and discharge is not None:
            self.hw_exit, self.hw_exit_kind = discharge, "discharge"
        else:
            self.hw_exit, self.hw_exit_kind = None, None
        self.final_exit = death if death is not None else discharge


def derive_endpoint(
    records: Sequence[LineListRecord], endpoint: Endpoint, study_end: date
) -> EndpointDataset:
    """Build the (time, event, known_cure) observation set for one endpoint.

    Times are whole-day date differences. Records the endpoint cannot apply
    to (no ward admission for ward endpoints, no ICU admission for ICU
    endpoints) are counted in ``n_skipped`` rather than classified.
    """
    endpoint = Endpoint(endpoint)
    observations: list[Observation] = []
    skipped = 0
    for record in records:
        course = _Course(record, study_end)
        obs = _classify(record, course, endpoint, study_end)
        if obs is None:
            skipped += 1
        else:
            observations.append(obs)
    return EndpointDataset(endpoint=endpoint, observations=tuple(observations), n_skipped=skipped)


def _classify(record, course, endpoint, study_end) -> Observation | None:
    def obs(start: date, end: date, event: bool, cure: bool) -> Observation:
        return Observation(
            time=float((end - start).days),
            event=event,
            known_cure=cure,
            age=record.age,
            sex=record.sex,
        )

    if endpoint in (Endpoint.ICU_DEATH, Endpoint.ICU_DISCHARGE):
        if course.icu is None:
            return None
        if course.died_in_icu:
            return obs(course.icu, record.date_death, endpoint is Endpoint.ICU_DEATH,
                       endpoint is Endpoint.ICU_DISCHARGE)
        if course.icu_exit_alive is not None:
            return obs(course.icu, course.icu_exit_alive, endpoint is Endpoint.ICU_DISCHARGE,
                       endpoint is Endpoint.ICU_DEATH)
        return obs(course.icu, study_end, False, False)  # still in ICU

    if endpoint is Endpoint.HOSPITAL_TOTAL:
        if course.entry is None:
            return None
        if course.final_exit is not None:
            return obs(course.entry, course.final_exit, True, False)
        return obs(course.entry, study_end, False, False)

    adm = record.date_hw_admission
    if adm is None:
        return None
    if course.icu is not None:
        # Leaving the ward for the ICU ends exposure to the ward endpoints.
        return obs(adm, course.icu, endpoint is Endpoint.HW_TO_ICU,
                   endpoint is not Endpoint.HW_TO_ICU)
    if course.hw_exit is not None:
        is_event = (endpoint is Endpoint.HW_DEATH and course.hw_exit_kind == "death") or (
            endpoint is Endpoint.HW_DISCHARGE and course.hw_exit_kind == "discharge"
        )
        return obs(adm, course.hw_exit, is_event, not is_event)
    return obs(adm, study_end, False, False)  # still in the ward


@dataclass(frozen=True)
class LineListSummary:
    """Dataset-level counts plus the marginals the simulator can reuse."""

    n_records: int
    n_admitted: int
    n_died: int
    n_discharged: int
    n_in_hospital: int
    n_still_in_icu: int
    n_icu_exit_then_death: int
    endpoint_counts: Mapping[str, Mapping[str, int]]
    sex_counts: Mapping[str, int]
    age_band_counts: Mapping[str, int]

    def demographics(self) -> Demographics:
        """Sex/age marginals as simulator demographics (uniform fallback when
        the line list lacks the data)."""
        male = self.sex_counts.get("male", 0)
        female = self.sex_counts.get("female", 0)
        female_fraction = female / (male + female) if male + female else 0.5
        total_aged = sum(self.age_band_counts.values())
        if total_aged:
            weights = {band: self.age_band_counts.get(band, 0) / total_aged for band in AGE_BAND_LABELS}
        else:
            weights = {band: 1 / len(AGE_BAND_LABELS) for band in AGE_BAND_LABELS}
        return Demographics(female_fraction=female_fraction, age_band_weights=weights)

    def to_json_dict(self) -> dict:
        return {
            "n_records": self.n_records,
            "n_admitted": self.n_admitted,
            "n_died": self.n_died,
            "n_discharged": self.n_discharged,
            "n_in_hospital": self.n_in_hospital,
            "n_still_in_icu": self.n_still_in_icu,
            "n_icu_exit_then_death": self.n_icu_exit_then_death,
            "endpoint_counts": {k: dict(v) for k, v in self.endpoint_counts.items()},
            "sex_counts": dict(self.sex_counts),
            "age_band_counts": dict(self.age_band_counts),
        }


def summarize(records: Sequence[LineListRecord], study_end: date) -> LineListSummary:
    """Count events / known cures / censorings per endpoint and collect the
    demographic marginals."""
    n_died = n_discharged = n_in_hospital = n_still_icu = n_flagged = n_admitted = 0
    for record in records:
        course = _Course(record, study_end)
        if course.entry is None:
            continue
        n_admitted += 1
        if record.date_death is not None:
            n_died += 1
            if course.icu_exit_alive is not None:
                n_flagged += 1  # left the ICU alive, died in the ward later
        elif record.date_discharge is not None:
            n_discharged += 1
        else:
            n_in_hospital += 1
            if course.icu is not None and course.icu_exit_alive is None:
                n_still_icu += 1
    endpoint_counts = {}
    for endpoint in Endpoint:
        dataset = derive_endpoint(records, endpoint, study_end)
        endpoint_counts[endpoint.value] = {
            "events": sum(1 for o in dataset.observations if o.event),
            "known_cures": sum(1 for o in dataset.observations if o.known_cure),
            "censored": sum(1 for o in dataset.observations if not o.event and not o.known_cure),
            "skipped": dataset.n_skipped,
        }
    sex_counts = {sex: sum(1 for r in records if r.sex == sex) for sex in SEXES}
    band_counts = dict.fromkeys(AGE_BAND_LABELS, 0)
    for record in records:
        if record.age is None:
            continue
        for label, low, high in zip(AGE_BAND_LABELS, AGE_BAND_EDGES, AGE_BAND_EDGES[1:]):
            if low <= record.age < high or (label == AGE_BAND_LABELS[-1] and record.age >= low):
                band_counts[label] += 1
                break
    return LineListSummary(
        n_records=len(records),
        n_admitted=n_admitted,
        n_died=n_died,
        n_discharged=n_discharged,
        n_in_hospital=n_in_hospital,
        n_still_in_icu=n_still_icu,
        n_icu_exit_then_death=n_flagged,
        endpoint_counts=endpoint_counts,
        sex_counts=sex_counts,
        age_band_counts=band_counts,
    )
