"""Right-continuous step survival curves and the incidence/latency split."""

import csv
import math
from dataclasses import dataclass, field
from typing import IO

import numpy as np


@dataclass(frozen=True)
class SurvivalCurve:
    """Step estimate of a survival function S(t).

    ``values[i]`` is the curve value immediately after ``jump_times[i]``; the
    curve is 1 strictly before the first jump and constant at the last value
    (the plateau) beyond the largest jump. Evaluation is right-continuous.
    ``t_max`` records the largest observation time backing the estimate, which
    may exceed the last jump when the longest follow-ups end without an event.
    """

    jump_times: np.ndarray
    values: np.ndarray
    t_max: float = field(default=math.nan)

    def __post_init__(self):
        jt = np.array(self.jump_times, dtype=np.float64).reshape(-1)
        vals = np.array(self.values, dtype=np.float64).reshape(-1)
        if jt.shape != vals.shape:
            raise ValueError("jump_times and values must have equal length")
        if jt.size:
            if not np.all(np.isfinite(jt)) or jt[0] < 0:
                raise ValueError("jump times must be finite and nonnegative")
            if np.any(np.diff(jt) <= 0):
                raise ValueError("jump times must be strictly increasing")
            if np.any(vals < 0) or np.any(vals > 1):
                raise ValueError("survival values must lie in [0, 1]")
            if np.any(np.diff(vals) > 0):
                raise ValueError("survival values must be non-increasing")
        t_max = self.t_max
        if math.isnan(t_max):
            t_max = float(jt[-1]) if jt.size else 0.0
        t_max = float(t_max)
        if jt.size and t_max < jt[-1]:
            raise ValueError("t_max cannot precede the last jump")
        jt.flags.writeable = False
        vals.flags.writeable = False
        object.__setattr__(self, "jump_times", jt)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "t_max", t_max)

    @property
    def plateau(self) -> float:
        """Curve value beyond the largest jump; 1 when there are no jumps."""
        return float(self.values[-1]) if self.values.size else 1.0

    def evaluate(self, t):
        """S(t) for scalar or array ``t``, right-continuous; 1 before the first jump."""
        t_arr = np.asarray(t, dtype=np.float64)
        idx = np.searchsorted(self.jump_times, t_arr, side="right") - 1
        out = np.where(idx < 0, 1.0, self.values[np.maximum(idx, 0)] if self.values.size else 1.0)
        if np.isscalar(t) or t_arr.ndim == 0:
            return float(out)
        return out

    def to_points(self) -> list[tuple[float, float]]:
        """(t, S) pairs: a (0, 1) anchor, one pair per jump, and a trailing
        pair at ``t_max`` carrying the plateau when follow-up extends past the
        last jump."""
        pts = [(0.0, 1.0)]
        pts.extend(zip(self.jump_times.tolist(), self.values.tolist()))
        last_jump = self.jump_times[-1] if self.jump_times.size else 0.0
        if self.t_max > last_jump:
            pts.append((self.t_max, self.plateau))
        return pts

    def write_csv(self, dest: str | IO[str]) -> None:
        """Write the curve as CSV with header ``t,survival`` (full precision)."""
        own = isinstance(dest, str)
        handle = open(dest, "w", newline="") if own else dest
        try:
            handle.write("t,survival\n")
            handle.write("0,1.0\n")
            for t, s in self.to_points()[1:]:
                handle.write(f"{t!r},{s!r}\n")
        finally:
            if own:
                handle.close()

    @classmethod
    def read_csv(cls, source: str | IO[str]) -> "SurvivalCurve":
        """Rebuild a curve from :meth:`write_csv` output."""
        own = isinstance(source, str)
        handle = open(source, newline="") if own else source
        try:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None or [c.strip() for c in header] != ["t", "survival"]:
                raise ValueError("expected header 't,survival'")
            rows = [(float(t), float(s)) for t, s in reader]
        finally:
            if own:
                handle.close()
        if rows and rows[0] == (0.0, 1.0):
            rows = rows[1:]  # leading anchor (a genuine jump at 0 has S < 1)
        t_max = math.nan
        if len(rows) >= 2 and rows[-1][1] == rows[-2][1]:
            t_max = rows[-1][0]  # trailing plateau marker, not a jump
            rows = rows[:-1]
        elif len(rows) == 1 and rows[0][1] == 1.0:
            t_max = rows[0][0]  # jump-free curve: only the follow-up end remains
            rows = []
        times = [t for t, _ in rows]
        vals = [s for _, s in rows]
        return cls(np.array(times), np.array(vals), t_max=t_max)

    def to_dict(self) -> dict:
        return {
            "t": self.jump_times.tolist(),
            "survival": self.values.tolist(),
            "plateau": self.plateau,
            "t_max": self.t_max,
        }


@dataclass(frozen=True)
class CureModelEstimate:
    """Event probability plus the time-to-event law of those who experience it.

    ``p`` is one minus the source curve's plateau; ``latency`` is the source
    curve rescaled onto the susceptible fraction, so its plateau is 0.
    """

    p: float
    latency: SurvivalCurve

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise ValueError("event probability must lie in [0, 1]")
        if self.p > 0 and abs(self.latency.plateau) > 1e-12:
            raise ValueError("latency curve must vanish in the tail")
