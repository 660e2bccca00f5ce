"""Subject-level observations consumed by the survival estimators."""

import csv
import math
from dataclasses import dataclass
from typing import IO, Iterable

SEXES = ("male", "female")

MAX_AGE = 130.0


@dataclass(frozen=True)
class Observation:
    """One subject's follow-up: time in days plus what was seen at that time.

    ``event`` marks an observed event. ``known_cure`` marks a subject known to
    never experience the event (e.g. discharged alive when the event under
    study is death in the ward). The two are mutually exclusive; both false
    means plain right censoring. ``age`` and ``sex`` are optional covariates.
    """

    time: float
    event: bool = False
    known_cure: bool = False
    age: float | None = None
    sex: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "time", float(self.time))
        if not math.isfinite(self.time) or self.time < 0:
            raise ValueError("invalid time")
        if self.event and self.known_cure:
            raise ValueError("event and known_cure are mutually exclusive")
        if self.age is not None:
            object.__setattr__(self, "age", float(self.age))
            if not math.isfinite(self.age) or not 0 <= self.age <= MAX_AGE:
                raise ValueError(f"age out of range: {self.age}")
        if self.sex is not None and self.sex not in SEXES:
            raise ValueError(f"sex must be one of {SEXES}, got {self.sex!r}")


OBSERVATION_COLUMNS = ("time", "event", "known_cure", "age", "sex")


def write_observations_csv(observations: Iterable[Observation], dest: str | IO[str]) -> None:
    """Write observations as CSV with header ``time,event,known_cure,age,sex``.

    Booleans are encoded as 1/0; missing age or sex is left empty.
    """
    own = isinstance(dest, str)
    handle = open(dest, "w", newline="") if own else dest
    try:
        writer = csv.writer(handle)
        writer.writerow(OBSERVATION_COLUMNS)
        for obs in observations:
            writer.writerow(
                [
                    repr(obs.time),
                    int(obs.event),
                    int(obs.known_cure),
                    "" if obs.age is None else repr(obs.age),
                    "" if obs.sex is None else obs.sex,
                ]
            )
    finally:
        if own:
            handle.close()


def read_observations_csv(source: str | IO[str]) -> list[Observation]:
    """Read observations written by :func:`write_observations_csv`."""
    own = isinstance(source, str)
    handle = open(source, newline="") if own else source
    try:
        reader = csv.DictReader(handle)
        missing = set(OBSERVATION_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"missing columns: {sorted(missing)}")
        out = []
        for row in reader:
            out.append(
                Observation(
                    time=float(row["time"]),
                    event=row["event"].strip() in ("1", "true", "True"),
                    known_cure=row["known_cure"].strip() in ("1", "true", "True"),
                    age=float(row["age"]) if row["age"].strip() else None,
                    sex=row["sex"].strip() or None,
                )
            )
        return out
    finally:
        if own:
            handle.close()
