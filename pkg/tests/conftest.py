"""Shared test helpers: curve comparison, random dataset generation, and an
independent brute-force oracle for the cure-corrected product-limit curve."""

import numpy as np
import pytest

from loscure import Observation


def assert_curves_close(actual, expected, tol=1e-12, check_t_max=True):
    """Step structure identical, values within an absolute tolerance."""
    np.testing.assert_array_equal(actual.jump_times, expected.jump_times)
    np.testing.assert_allclose(actual.values, expected.values, rtol=0, atol=tol)
    assert abs(actual.plateau - expected.plateau) <= tol
    if check_t_max:
        assert actual.t_max == expected.t_max


def random_dataset(rng, size=None, allow_cures=True, allow_censoring=True,
                   with_ages=False, tie_prob=0.5):
    """Random observation list with deliberate ties (times snap to a half-day
    grid with probability ``tie_prob``)."""
    n = size if size is not None else int(rng.integers(3, 51))
    out = []
    for _ in range(n):
        t = float(rng.uniform(0, 30))
        if rng.random() < tie_prob:
            t = round(t * 2) / 2
        u = rng.random()
        if allow_cures and u < 0.25:
            event, cure = False, True
        elif allow_censoring and u < 0.55:
            event, cure = False, False
        else:
            event, cure = True, False
        age = float(rng.uniform(20, 95)) if with_ages else None
        sex = ("male", "female")[int(rng.integers(2))] if with_ages else None
        out.append(Observation(t, event=event, known_cure=cure, age=age, sex=sex))
    return out


def bruteforce_cure_corrected_curve(observations):
    """Literal 1-based transcription of the cure-corrected product-limit
    definition, independent of the production kernels: sort by (time, event <
    cure < censored, input order), then at the i-th observation (1-based)
    with an event multiply by 1 - 1/(n - i + 1 + sum of cure flags up to i).

    Returns (jump_times, values_after_each_distinct_event_time).
    """

    def rank(o):
        return 0 if o.event else (1 if o.known_cure else 2)

    ordered = sorted(enumerate(observations), key=lambda iv: (iv[1].time, rank(iv[1]), iv[0]))
    n = len(ordered)
    s = 1.0
    cure_sum = 0
    per_time = {}
    for i, (_, o) in enumerate(ordered, start=1):
        cure_sum += 1 if o.known_cure else 0
        if o.event:
            s *= 1.0 - 1.0 / (n - i + 1 + cure_sum)
            per_time[o.time] = s
    times = sorted(per_time)
    return np.array(times), np.array([per_time[t] for t in times])


@pytest.fixture
def rng():
    return np.random.default_rng(20200506)
