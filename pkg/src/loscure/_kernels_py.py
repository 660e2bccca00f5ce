"""NumPy implementations of the hot kernels.

These are the reference semantics for the compiled core in
``_kernels_cy.pyx``; the two must stay in lockstep (the backend equivalence
tests compare them element for element). Both kernels are pure functions of
their array arguments.
"""

import numpy as np

# Guards log(0) when a uniform draw is exactly 0; applied identically in the
# compiled kernel so both backends transform the same stream the same way.
TINY_UNIFORM = 1e-300


def product_limit(weights, events, cures):
    """Sequential product-limit values over observations sorted by time.

    ``weights[i]`` is the mass of observation i (1 for unconditional
    estimators, kernel weights for conditional ones). At each event the curve
    multiplies by ``1 - w_i / risk_i`` where ``risk_i`` sums the weights of
    all later-or-equal observations plus the weights of known cures already
    passed: a known cure never leaves the risk denominator. Returns the
    survival value after processing each index.
    """
    w = np.ascontiguousarray(weights, dtype=np.float64)
    d = np.ascontiguousarray(events, dtype=np.uint8)
    x = np.ascontiguousarray(cures, dtype=np.uint8)
    suffix = np.cumsum(w[::-1])[::-1]
    cure_prefix = np.cumsum(w * x)
    risk = suffix + cure_prefix
    live = (d != 0) & (w > 0.0)
    frac = np.zeros_like(w)
    np.divide(w, risk, out=frac, where=live)
    factors = np.where(live, 1.0 - frac, 1.0)
    return np.cumprod(factors)


def simulate_replication(U, p_hosp, adm_cdf, female_frac, band_cdf, hw_cdf, icu_cdf,
                         durations, horizon):
    """One outbreak replication driven by a pre-drawn uniform matrix.

    U has one row per infected individual and eight columns, consumed in a
    fixed order regardless of the path taken: hospitalized?, admission day,
    sex, age band, ward outcome, ward stay, ICU outcome, ICU stay. Outcome
    draws invert the cumulative rows of ``hw_cdf``/``icu_cdf`` (one row per
    sex-by-age-band stratum); stays invert Weibull survival, rounded up to
    whole days with a 1-day floor, unless ``durations[s, t, 2] >= 0`` selects
    a point mass. Events falling past ``horizon`` leave the individual in the
    last reached state through the horizon and count as truncated.

    Returns ``(counts, n_hospitalized, n_truncated)`` where counts is int64 of
    shape (horizon+1, 5): ward, ICU, cumulative dead, cumulative discharged,
    cumulative admitted.
    """
    U = np.asarray(U, dtype=np.float64)
    H = int(horizon)
    n_bands = band_cdf.shape[0]

    hosp = U[:, 0] < p_hosp
    a = _invert_cdf(adm_cdf, U[hosp, 1])
    sex = (U[hosp, 2] < female_frac).astype(np.int64)
    band = _invert_cdf(band_cdf, U[hosp, 3])
    s = sex * n_bands + band

    hw_outcome = (U[hosp, 4] >= hw_cdf[s, 0]).astype(np.int64) + (U[hosp, 4] >= hw_cdf[s, 1])
    d_hw = _stay_days(durations, s, hw_outcome, U[hosp, 5], H)
    icu_outcome = (U[hosp, 6] >= icu_cdf[s, 0]).astype(np.int64)
    d_icu = _stay_days(durations, s, 3 + icu_outcome, U[hosp, 7], H)

    to_icu = hw_outcome == 0
    hw_end = a + d_hw
    exit_day = np.where(to_icu, hw_end + d_icu, hw_end)
    dies = (hw_outcome == 1) | (to_icu & (icu_outcome == 0))

    hw_diff = np.zeros(H + 2, dtype=np.int64)
    icu_diff = np.zeros(H + 2, dtype=np.int64)
    dead_diff = np.zeros(H + 1, dtype=np.int64)
    disch_diff = np.zeros(H + 1, dtype=np.int64)
    adm_diff = np.zeros(H + 1, dtype=np.int64)

    np.add.at(adm_diff, a, 1)
    np.add.at(hw_diff, a, 1)
    np.add.at(hw_diff, np.minimum(hw_end, H + 1), -1)
    icu_in = to_icu & (hw_end <= H)
    np.add.at(icu_diff, hw_end[icu_in], 1)
    np.add.at(icu_diff, np.minimum(exit_day[icu_in], H + 1), -1)
    absorbed = exit_day <= H
    np.add.at(dead_diff, exit_day[absorbed & dies], 1)
    np.add.at(disch_diff, exit_day[absorbed & ~dies], 1)

    counts = np.empty((H + 1, 5), dtype=np.int64)
    counts[:, 0] = np.cumsum(hw_diff)[: H + 1]
    counts[:, 1] = np.cumsum(icu_diff)[: H + 1]
    counts[:, 2] = np.cumsum(dead_diff)
    counts[:, 3] = np.cumsum(disch_diff)
    counts[:, 4] = np.cumsum(adm_diff)
    return counts, int(np.count_nonzero(hosp)), int(np.count_nonzero(~absorbed))


def _invert_cdf(cdf, u):
    """Index of the first cumulative weight exceeding u, clamped to the last
    cell (the builders pin the final cumulative weight to exactly 1.0)."""
    idx = np.searchsorted(cdf, u, side="right")
    return np.minimum(idx, cdf.shape[0] - 1).astype(np.int64)


def _stay_days(durations, s, t, u, horizon):
    """Whole-day stay lengths: ceil of the Weibull inverse transform, >= 1,
    clipped to horizon+2 (anything past the horizon truncates anyway)."""
    shape = durations[s, t, 0]
    scale = durations[s, t, 1]
    fixed = durations[s, t, 2]
    u = np.maximum(u, TINY_UNIFORM)
    with np.errstate(invalid="ignore", over="ignore"):
        drawn = scale * (-np.log(u)) ** (1.0 / shape)
    raw = np.where(fixed >= 0.0, fixed, drawn)
    days = np.minimum(np.maximum(np.ceil(raw), 1.0), horizon + 2.0)
    return days.astype(np.int64)
