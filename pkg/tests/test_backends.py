"""Compiled core vs NumPy fallback: element-for-element agreement, plus the
scalar trajectory path as a third independent witness."""

import subprocess
import sys

import numpy as np
import pytest

from loscure.backend import active_backend, get_backend
from loscure.defaults import conditional_default_config, default_config
from loscure.simulate import ICU, _individual_from_uniforms, compile_tables

try:
    compiled = get_backend("compiled")
except ImportError:
    compiled = None

python_backend = get_backend("python")

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled core not built")


def _random_pl_inputs(rng, n):
    w = np.where(rng.random(n) < 0.1, 0.0, rng.random(n))
    d = (rng.random(n) < 0.5).astype(np.uint8)
    x = ((rng.random(n) < 0.4) & (d == 0)).astype(np.uint8)
    return w, d, x


@needs_compiled
def test_product_limit_matches_exactly(rng):
    for n in (1, 2, 7, 50, 1000):
        for _ in range(20):
            w, d, x = _random_pl_inputs(rng, n)
            np.testing.assert_array_equal(
                compiled.product_limit(w, d, x), python_backend.product_limit(w, d, x)
            )


@needs_compiled
def test_product_limit_unit_weight_cases(rng):
    w = np.ones(100)
    d = (rng.random(100) < 0.6).astype(np.uint8)
    x = ((rng.random(100) < 0.5) & (d == 0)).astype(np.uint8)
    np.testing.assert_array_equal(
        compiled.product_limit(w, d, x), python_backend.product_limit(w, d, x)
    )
    all_cure = np.ones(10, dtype=np.uint8)
    np.testing.assert_array_equal(
        compiled.product_limit(np.ones(10), np.zeros(10, np.uint8), all_cure),
        np.ones(10),
    )


def _replication_args(config, rep_seed):
    tables = compile_tables(config)
    rng = np.random.default_rng(rep_seed)
    U = rng.random((config.n_infected, 8))
    return U, (
        tables.p_hosp,
        tables.adm_cdf,
        tables.female_frac,
        tables.band_cdf,
        tables.hw_cdf,
        tables.icu_cdf,
        tables.durations,
        tables.horizon,
    )


@needs_compiled
@pytest.mark.parametrize("config_factory", [default_config, conditional_default_config])
def test_simulate_replication_matches_exactly(config_factory):
    config = config_factory().replace(n_infected=2000)
    for rep_seed in (0, 1, 2, 3):
        U, args = _replication_args(config, rep_seed)
        c_counts, c_hosp, c_trunc = compiled.simulate_replication(U, *args)
        p_counts, p_hosp, p_trunc = python_backend.simulate_replication(U, *args)
        np.testing.assert_array_equal(c_counts, p_counts)
        assert (c_hosp, c_trunc) == (p_hosp, p_trunc)


@pytest.mark.parametrize("backend_name", ["python", "compiled"])
def test_kernel_counts_match_scalar_trajectories(backend_name):
    if backend_name == "compiled" and compiled is None:
        pytest.skip("compiled core not built")
    backend = get_backend(backend_name)
    config = default_config().replace(n_infected=500, horizon_days=120)
    U, args = _replication_args(config, 9)
    counts, n_hosp, n_trunc = backend.simulate_replication(U, *args)

    tables = compile_tables(config)
    horizon = config.horizon_days
    expect = np.zeros((horizon + 1, 5), dtype=np.int64)
    hosp = trunc = 0
    for u in U:
        ind = _individual_from_uniforms(tables, u)
        if not ind.hospitalized:
            continue
        hosp += 1
        admission = ind.admission_day
        expect[admission:, 4] += 1
        final_state, final_day = ind.trajectory[-1]
        if final_day > horizon:
            trunc += 1
        icu_day = next((d for s, d in ind.trajectory if s == ICU), None)
        hw_end = min(icu_day if icu_day is not None else final_day, horizon + 1)
        expect[admission:hw_end, 0] += 1
        if icu_day is not None and icu_day <= horizon:
            expect[icu_day : min(final_day, horizon + 1), 1] += 1
        if final_day <= horizon:
            expect[final_day:, 2 if final_state == "DEAD" else 3] += 1
    np.testing.assert_array_equal(counts, expect)
    assert (n_hosp, n_trunc) == (hosp, trunc)


def test_backend_env_override_python():
    code = (
        "import loscure; assert loscure.active_backend() == 'python', loscure.active_backend()"
    )
    proc = subprocess.run(
        [sys.executable, "-c", code],
        env={"PATH": "/usr/bin:/bin", "LOSCURE_BACKEND": "python"},
        capture_output=True,
    )
    assert proc.returncode == 0, proc.stderr.decode()


def test_active_backend_reports_a_known_name():
    assert active_backend() in ("compiled", "python")
