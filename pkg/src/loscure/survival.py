"""Unconditional survival estimators for right-censored data with partially
known cure status.

All estimators share the same product-limit core: observations are sorted by
time (events first within ties, then known cures, then plain censorings, with
input order as the final tiebreak) and the curve drops by a factor
``1 - 1/risk`` at each event. They differ in the risk denominator:

* ``km_estimate`` uses the classical shrinking risk set and treats known
  cures as plain censorings.
* ``km_estimate_reduced`` drops known cures from the sample first.
* ``npmcm_estimate`` keeps known cures in the risk denominator forever, so
  the curve levels off at the estimated non-event fraction instead of being
  dragged to an inflated tail.
* ``empirical_estimate`` discards censored subjects entirely.

``latency`` splits any such curve into the event probability (one minus the
plateau) and the time-to-event law of the susceptible fraction.
"""

from fractions import Fraction
from typing import Sequence

import numpy as np

from .curves import CureModelEstimate, SurvivalCurve
from .observations import Observation

_CLASS_EVENT, _CLASS_CURE, _CLASS_CENSORED = 0, 1, 2


def observation_arrays(observations: Sequence[Observation]):
    """(times, events, cures, order) sorted by time with the documented tie
    rule; ``order`` maps sorted positions back to input positions."""
    t = np.array([o.time for o in observations], dtype=np.float64)
    if t.size and t.min() < 0:
        raise ValueError("invalid time")
    d = np.array([o.event for o in observations], dtype=np.uint8)
    x = np.array([o.known_cure for o in observations], dtype=np.uint8)
    cls = np.where(d == 1, _CLASS_EVENT, np.where(x == 1, _CLASS_CURE, _CLASS_CENSORED))
    order = np.lexsort((np.arange(t.size), cls, t))
    return t[order], d[order], x[order], order


def curve_from_survival_values(times, events, surv, weights=None) -> SurvivalCurve:
    """Collapse per-observation survival values into a step curve with one
    jump per distinct event time. Zero-weight observations carry no jump and
    do not extend the follow-up span."""
    w = np.ones_like(times) if weights is None else weights
    positive = w > 0.0
    t_max = float(times[positive].max()) if positive.any() else 0.0
    live = (events != 0) & positive
    if not live.any():
        return SurvivalCurve(np.empty(0), np.empty(0), t_max=t_max)
    jt = times[live]
    jv = surv[live]
    last_of_run = np.r_[jt[1:] != jt[:-1], True]
    return SurvivalCurve(jt[last_of_run], jv[last_of_run], t_max=t_max)


def _require(observations: Sequence[Observation]) -> None:
    if len(observations) == 0:
        raise ValueError("no observations")


def _unit_product_limit(events, cures) -> np.ndarray:
    """Survival after each sorted observation with unit weights.

    Risk sets are integers here, so the running product is kept as an exact
    rational and rounded to float once per value. That makes the reduction
    identities (no cures -> Kaplan-Meier, no censoring -> empirical survival)
    hold bitwise, not just to rounding error.
    """
    n = len(events)
    running = Fraction(1)
    out = np.empty(n, dtype=np.float64)
    cures_passed = 0
    for i in range(n):
        cures_passed += int(cures[i])
        if events[i]:
            risk = (n - i) + cures_passed
            running *= Fraction(risk - 1, risk)
        out[i] = float(running)
    return out


def km_estimate(observations: Sequence[Observation]) -> SurvivalCurve:
    """Kaplan-Meier product-limit curve; known-cure flags are ignored and
    treated as plain right censoring."""
    _require(observations)
    t, d, _, _ = observation_arrays(observations)
    surv = _unit_product_limit(d, np.zeros_like(d))
    return curve_from_survival_values(t, d, surv)


def km_estimate_reduced(observations: Sequence[Observation]) -> SurvivalCurve:
    """Kaplan-Meier on the subsample with known cures removed."""
    _require(observations)
    kept = [o for o in observations if not o.known_cure]
    if not kept:
        raise ValueError("no susceptible observations")
    return km_estimate(kept)


def empirical_estimate(observations: Sequence[Observation]) -> SurvivalCurve:
    """Empirical survival function of the observed event times only; censored
    and known-cure subjects are discarded."""
    _require(observations)
    times = np.sort(np.array([o.time for o in observations if o.event], dtype=np.float64))
    if times.size == 0:
        raise ValueError("no observed events")
    if times.min() < 0:
        raise ValueError("invalid time")
    m = times.size
    distinct, counts = np.unique(times, return_counts=True)
    surv = (m - np.cumsum(counts)) / m
    return SurvivalCurve(distinct, surv, t_max=float(distinct[-1]))


def npmcm_estimate(observations: Sequence[Observation]) -> SurvivalCurve:
    """Cure-corrected product-limit curve: known cures stay in the risk
    denominator permanently, so the plateau estimates the non-event fraction.
    Reduces exactly to :func:`km_estimate` when no cure is flagged."""
    _require(observations)
    t, d, x, _ = observation_arrays(observations)
    surv = _unit_product_limit(d, x)
    return curve_from_survival_values(t, d, surv)


def event_probability(curve: SurvivalCurve) -> float:
    """Probability that the event ever happens: one minus the plateau."""
    return 1.0 - curve.plateau


def empirical_event_probability(observations: Sequence[Observation]) -> float:
    """Observed events over total subjects; biased low under censoring."""
    _require(observations)
    return sum(1 for o in observations if o.event) / len(observations)


def latency(curve: SurvivalCurve) -> CureModelEstimate:
    """Split a curve into event probability and the susceptible fraction's
    time-to-event curve: S0(t) = (S(t) - plateau) / (1 - plateau)."""
    plateau = curve.plateau
    if plateau >= 1.0:
        raise ValueError("event probability is zero; latency undefined")
    p = 1.0 - plateau
    # The plateau is used directly as the non-event mass so the tail is an
    # exact zero; the clip absorbs last-ulp rounding elsewhere on the curve.
    values = np.clip((curve.values - plateau) / p, 0.0, 1.0)
    return CureModelEstimate(p=p, latency=SurvivalCurve(curve.jump_times, values, t_max=curve.t_max))
