import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loscure import (
    Observation,
    empirical_estimate,
    empirical_event_probability,
    event_probability,
    km_estimate,
    km_estimate_reduced,
    latency,
    npmcm_estimate,
)

from conftest import assert_curves_close, bruteforce_cure_corrected_curve, random_dataset


def _obs(times, events=None, cures=None):
    events = events or [True] * len(times)
    cures = cures or [False] * len(times)
    return [Observation(t, event=e, known_cure=c) for t, e, c in zip(times, events, cures)]


FOUR = _obs([1, 2, 3, 4], [True, False, True, False])
FOUR_WITH_CURE = _obs([1, 2, 3, 4], [True, False, True, False], [False, True, False, False])


class TestKaplanMeier:
    def test_all_events_equals_empirical_survival(self):
        curve = km_estimate(_obs([1, 2, 3]))
        np.testing.assert_array_equal(curve.jump_times, [1, 2, 3])
        np.testing.assert_allclose(curve.values, [2 / 3, 1 / 3, 0.0], atol=1e-15)
        assert curve.plateau == 0.0

    def test_censoring_shrinks_risk_set(self):
        curve = km_estimate(FOUR)
        np.testing.assert_array_equal(curve.jump_times, [1, 3])
        np.testing.assert_allclose(curve.values, [3 / 4, 3 / 8], atol=1e-15)
        assert curve.t_max == 4.0

    def test_known_cures_are_plain_censoring_here(self):
        assert_curves_close(km_estimate(FOUR_WITH_CURE), km_estimate(FOUR))

    def test_single_censored_observation(self):
        curve = km_estimate([Observation(5.0)])
        assert curve.jump_times.size == 0
        assert curve.plateau == 1.0
        assert curve.evaluate(100.0) == 1.0

    def test_empty_input(self):
        with pytest.raises(ValueError, match="no observations"):
            km_estimate([])

    def test_tied_times_process_events_first(self):
        # (2, event), (2, cure), (2, censored), (5, event): the event at 2
        # sees all four at risk; the event at 5 keeps the cure in its
        # denominator (1 remaining + 1 passed cure).
        obs = [
            Observation(2, event=True),
            Observation(2),
            Observation(2, known_cure=True),
            Observation(5, event=True),
        ]
        km = km_estimate(obs)
        np.testing.assert_allclose(km.values, [3 / 4, 0.0], atol=1e-15)
        cure_corrected = npmcm_estimate(obs)
        np.testing.assert_allclose(cure_corrected.values, [3 / 4, 3 / 8], atol=1e-15)


class TestKaplanMeierReduced:
    def test_drops_known_cures_then_estimates(self):
        # cure at time 2 removed; subsample (1, 3, 4) with events (T, T, F)
        obs = _obs([1, 2, 3, 4], [True, False, True, False], [False, True, False, False])
        curve = km_estimate_reduced(obs)
        np.testing.assert_array_equal(curve.jump_times, [1, 3])
        np.testing.assert_allclose(curve.values, [2 / 3, 1 / 3], atol=1e-15)
        assert_curves_close(curve, km_estimate([o for o in obs if not o.known_cure]))

    def test_no_cures_is_identity(self):
        assert_curves_close(km_estimate_reduced(FOUR), km_estimate(FOUR))

    def test_all_cures_is_an_error(self):
        with pytest.raises(ValueError, match="no susceptible observations"):
            km_estimate_reduced([Observation(1, known_cure=True)])


class TestEmpirical:
    def test_uses_only_observed_events(self):
        curve = empirical_estimate(FOUR)
        np.testing.assert_array_equal(curve.jump_times, [1, 3])
        np.testing.assert_allclose(curve.values, [1 / 2, 0.0], atol=1e-15)
        assert curve.t_max == 3.0  # censored follow-up is discarded entirely

    def test_equals_km_without_censoring(self):
        obs = _obs([2, 4, 4, 7, 9])
        assert_curves_close(empirical_estimate(obs), km_estimate(obs))

    def test_no_events_is_an_error(self):
        with pytest.raises(ValueError, match="no observed events"):
            empirical_estimate([Observation(1.0), Observation(2.0)])


class TestCureCorrected:
    def test_hand_checked_fixture(self):
        curve = npmcm_estimate(FOUR_WITH_CURE)
        np.testing.assert_array_equal(curve.jump_times, [1, 3])
        # risk sets: 4 at t=1; at t=3, 2 remaining + 1 passed cure = 3
        np.testing.assert_allclose(curve.values, [3 / 4, 1 / 2], atol=1e-15)
        assert curve.plateau == 0.5

    def test_reduces_to_km_without_cures(self):
        assert_curves_close(npmcm_estimate(FOUR), km_estimate(FOUR))

    def test_all_events_equals_uncensored_km(self):
        obs = _obs([3, 1, 2])
        assert_curves_close(npmcm_estimate(obs), km_estimate(obs))

    def test_agrees_with_bruteforce_oracle(self, rng):
        for _ in range(200):
            obs = random_dataset(rng, size=int(rng.integers(1, 9)))
            times, values = bruteforce_cure_corrected_curve(obs)
            curve = npmcm_estimate(obs)
            np.testing.assert_array_equal(curve.jump_times, times)
            np.testing.assert_allclose(curve.values, values, rtol=0, atol=1e-12)


class TestEventProbability:
    def test_complement_of_plateau(self):
        assert event_probability(npmcm_estimate(FOUR_WITH_CURE)) == 0.5
        assert event_probability(km_estimate(_obs([1, 2, 3]))) == 1.0

    def test_empirical_fraction(self):
        assert empirical_event_probability(FOUR) == 0.5
        assert empirical_event_probability(_obs([1, 2])) == 1.0
        assert empirical_event_probability([Observation(1.0), Observation(2.0)]) == 0.0
        with pytest.raises(ValueError, match="no observations"):
            empirical_event_probability([])


class TestLatency:
    def test_hand_checked_fixture(self):
        estimate = latency(npmcm_estimate(FOUR_WITH_CURE))
        assert estimate.p == 0.5
        np.testing.assert_allclose(estimate.latency.values, [0.5, 0.0], atol=1e-15)
        assert estimate.latency.plateau == 0.0
        assert estimate.latency.t_max == 4.0

    def test_no_cure_mass_returns_curve_unchanged(self):
        curve = km_estimate(_obs([1, 2, 3]))
        estimate = latency(curve)
        assert estimate.p == 1.0
        np.testing.assert_array_equal(estimate.latency.values, curve.values)

    def test_plateau_one_is_an_error(self):
        with pytest.raises(ValueError, match="latency undefined"):
            latency(km_estimate([Observation(5.0)]))


def _observation_lists(min_size=3, max_size=50):
    times = st.one_of(
        st.integers(min_value=0, max_value=20).map(float),
        st.floats(min_value=0, max_value=30, allow_nan=False, allow_infinity=False),
    )
    kinds = st.sampled_from(["event", "cure", "censored"])
    return st.lists(st.tuples(times, kinds), min_size=min_size, max_size=max_size).map(
        lambda rows: [
            Observation(t, event=(k == "event"), known_cure=(k == "cure")) for t, k in rows
        ]
    )


@given(_observation_lists())
@settings(max_examples=150, deadline=None)
def test_property_curves_are_valid_steps(obs):
    for estimator in (km_estimate, npmcm_estimate, km_estimate_reduced):
        try:
            curve = estimator(obs)
        except ValueError:
            continue  # km_estimate_reduced on all-cure datasets
        assert np.all(curve.values >= 0) and np.all(curve.values <= 1)
        assert np.all(np.diff(curve.values) <= 0)
        event_times = {o.time for o in obs if o.event}
        assert set(curve.jump_times.tolist()) <= event_times


@given(_observation_lists())
@settings(max_examples=150, deadline=None)
def test_property_cure_correction_reduces_to_km(obs):
    stripped = [Observation(o.time, event=o.event) for o in obs]
    assert_curves_close(npmcm_estimate(stripped), km_estimate(stripped))


@given(_observation_lists())
@settings(max_examples=150, deadline=None)
def test_property_cure_corrected_dominates_km(obs):
    km = km_estimate(obs)
    corrected = npmcm_estimate(obs)
    grid = np.r_[0.0, km.jump_times, corrected.jump_times, km.t_max + 1.0]
    assert np.all(corrected.evaluate(grid) >= km.evaluate(grid) - 1e-12)


@given(_observation_lists())
@settings(max_examples=100, deadline=None)
def test_property_plateau_complements_event_probability(obs):
    curve = npmcm_estimate(obs)
    assert event_probability(curve) + curve.plateau == 1.0


@given(_observation_lists())
@settings(max_examples=100, deadline=None)
def test_property_latency_is_a_proper_survival_curve(obs):
    curve = npmcm_estimate(obs)
    if curve.plateau >= 1.0:
        return
    estimate = latency(curve)
    assert abs(estimate.latency.plateau) <= 1e-12
    assert np.all(estimate.latency.values >= 0) and np.all(estimate.latency.values <= 1)


@given(_observation_lists(min_size=1, max_size=8))
@settings(max_examples=200, deadline=None)
def test_property_matches_bruteforce_oracle(obs):
    times, values = bruteforce_cure_corrected_curve(obs)
    curve = npmcm_estimate(obs)
    np.testing.assert_array_equal(curve.jump_times, times)
    np.testing.assert_allclose(curve.values, values, rtol=0, atol=1e-12)
