import io
import json
import math

import numpy as np
import pytest

from loscure import SurvivalCurve, WeibullParams, fit_weibull, weibull_sample, weibull_survival


class _FixedUniform:
    """Generator stand-in returning a preset uniform draw."""

    def __init__(self, value):
        self.value = value

    def random(self, size=None):
        if size is None:
            return self.value
        return np.full(size, self.value)


class TestSurvivalFunction:
    def test_anchor_values(self):
        assert weibull_survival(WeibullParams(1.0, 10.0), 0.0) == 1.0
        assert weibull_survival(WeibullParams(1.0, 10.0), 10.0) == pytest.approx(math.exp(-1))
        # at t = scale the survival is 1/e for any shape
        assert weibull_survival(WeibullParams(2.0, 14.0), 14.0) == pytest.approx(math.exp(-1))

    def test_array_evaluation_and_validation(self):
        out = weibull_survival(WeibullParams(2.0, 5.0), np.array([0.0, 5.0]))
        np.testing.assert_allclose(out, [1.0, math.exp(-1)])
        with pytest.raises(ValueError, match="nonnegative"):
            weibull_survival(WeibullParams(1.0, 1.0), -1.0)

    def test_params_validation(self):
        with pytest.raises(ValueError, match="shape"):
            WeibullParams(0.0, 1.0)
        with pytest.raises(ValueError, match="scale"):
            WeibullParams(1.0, math.inf)


class TestSampling:
    def test_inverse_transform_at_one_over_e_returns_scale(self):
        for shape in (0.5, 1.0, 3.7):
            value = weibull_sample(WeibullParams(shape, 10.0), _FixedUniform(math.exp(-1)))
            assert value == pytest.approx(10.0, rel=1e-12)

    def test_uniform_near_one_gives_vanishing_sample(self):
        value = weibull_sample(WeibullParams(1.0, 10.0), _FixedUniform(1 - 1e-12))
        assert 0 < value < 1e-10

    def test_uniform_zero_stays_finite(self):
        assert math.isfinite(weibull_sample(WeibullParams(1.0, 10.0), _FixedUniform(0.0)))

    def test_seeded_mean_matches_law_of_large_numbers(self):
        rng = np.random.default_rng(20200401)
        draws = weibull_sample(WeibullParams(1.0, 10.0), rng, size=100_000)
        assert abs(draws.mean() - 10.0) <= 0.1  # within 1% of the exponential mean

    def test_seeded_survival_at_scale_is_one_over_e(self):
        rng = np.random.default_rng(20200402)
        draws = weibull_sample(WeibullParams(1.6, 12.0), rng, size=100_000)
        assert abs((draws > 12.0).mean() - math.exp(-1)) <= 0.01


def _analytic_curve(shape, scale, t=None):
    t = np.arange(1.0, 41.0) if t is None else t
    return SurvivalCurve(t, weibull_survival(WeibullParams(shape, scale), t))


class TestFit:
    def test_exponential_self_fit(self):
        report = fit_weibull(_analytic_curve(1.0, 10.0))
        assert report.converged
        assert report.params.shape == pytest.approx(1.0, abs=1e-4)
        assert report.params.scale == pytest.approx(10.0, abs=1e-3)
        assert report.sse <= 1e-12

    def test_shape_two_self_fit(self):
        report = fit_weibull(_analytic_curve(2.0, 14.0))
        assert report.params.shape == pytest.approx(2.0, abs=1e-4)
        assert report.params.scale == pytest.approx(14.0, abs=1e-3)
        assert report.sse <= 1e-12

    @pytest.mark.parametrize("shape,scale", [(0.8, 4.0), (1.5, 12.0), (3.0, 25.0), (5.0, 8.0)])
    def test_grid_self_fit_relative_error(self, shape, scale):
        t = np.linspace(scale / 8, scale * 2.5, 12)
        report = fit_weibull(_analytic_curve(shape, scale, t))
        assert abs(report.params.shape - shape) / shape <= 1e-3
        assert abs(report.params.scale - scale) / scale <= 1e-3

    def test_underdetermined_fit_is_an_error(self):
        with pytest.raises(ValueError, match="underdetermined"):
            fit_weibull(SurvivalCurve([3.0], [0.5]))

    def test_high_plateau_warns(self):
        curve = SurvivalCurve([1.0, 2.0, 3.0], [0.9, 0.8, 0.7])
        with pytest.warns(UserWarning, match="latency"):
            fit_weibull(curve)

    def test_iteration_cap_and_convergence_flag(self):
        report = fit_weibull(_analytic_curve(1.5, 9.0), max_iterations=3)
        assert not report.converged
        assert report.iterations == 3
        full = fit_weibull(_analytic_curve(1.5, 9.0))
        assert full.converged and full.iterations <= 500

    def test_monotone_descent_trace(self):
        report = fit_weibull(_analytic_curve(2.2, 17.0), trace=True)
        assert report.trace is not None and len(report.trace) == report.iterations
        assert all(b <= a for a, b in zip(report.trace, report.trace[1:]))
        assert fit_weibull(_analytic_curve(2.2, 17.0)).trace is None

    def test_re_encoded_curve_fits_identically(self):
        t = np.arange(1.0, 31.0)
        s = weibull_survival(WeibullParams(1.7, 11.0), t)
        a = fit_weibull(SurvivalCurve(t, s))
        b = fit_weibull(SurvivalCurve(t.tolist(), [float(v) for v in s]))
        assert a.params.shape == pytest.approx(b.params.shape, abs=1e-10)
        assert a.params.scale == pytest.approx(b.params.scale, abs=1e-10)

    def test_csv_round_trip_fits_identically(self):
        curve = _analytic_curve(1.3, 16.0)
        buf = io.StringIO()
        curve.write_csv(buf)
        back = SurvivalCurve.read_csv(io.StringIO(buf.getvalue()))
        a, b = fit_weibull(curve), fit_weibull(back)
        assert a.params.shape == pytest.approx(b.params.shape, abs=1e-10)
        assert a.params.scale == pytest.approx(b.params.scale, abs=1e-10)

    def test_report_json_payload(self):
        report = fit_weibull(_analytic_curve(1.0, 10.0))
        doc = json.loads(report.to_json())
        assert set(doc) == {"shape", "scale", "sse", "iterations", "converged"}
        assert doc["converged"] is True

    def test_fit_on_estimated_latency_recovers_generator(self):
        # noiseless end-to-end sanity: exact susceptible times, no censoring
        from loscure import Observation, latency, npmcm_estimate

        rng = np.random.default_rng(77)
        obs = []
        for _ in range(4000):
            if rng.random() < 0.4:
                obs.append(Observation(float(rng.uniform(0, 40)), known_cure=True))
            else:
                t = 12.0 * (-math.log(max(rng.random(), 1e-300))) ** (1 / 1.5)
                obs.append(Observation(t, event=True))
        report = fit_weibull(latency(npmcm_estimate(obs)).latency)
        assert report.params.shape == pytest.approx(1.5, abs=0.08)
        assert report.params.scale == pytest.approx(12.0, abs=0.5)
