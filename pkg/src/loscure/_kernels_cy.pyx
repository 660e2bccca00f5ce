# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: product-limit inner loop and outbreak replication.

Semantics mirror ``_kernels_py`` exactly; the backend equivalence tests hold
the two to element-for-element agreement.
"""

from libc.math cimport ceil, log, pow

import numpy as np

cdef double TINY_UNIFORM = 1e-300


def product_limit(weights, events, cures):
    """Sequential product-limit values over observations sorted by time.

    See ``_kernels_py.product_limit`` for the contract.
    """
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef unsigned char[::1] d = np.ascontiguousarray(events, dtype=np.uint8)
    cdef unsigned char[::1] x = np.ascontiguousarray(cures, dtype=np.uint8)
    cdef Py_ssize_t n = w.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double[::1] suffix = np.empty(n, dtype=np.float64)
    cdef double acc = 0.0
    cdef double cure_prefix = 0.0
    cdef double surv = 1.0
    cdef double risk
    cdef Py_ssize_t i
    for i in range(n - 1, -1, -1):
        acc = acc + w[i]
        suffix[i] = acc
    for i in range(n):
        cure_prefix = cure_prefix + w[i] * x[i]
        if d[i] != 0 and w[i] > 0.0:
            risk = suffix[i] + cure_prefix
            surv = surv * (1.0 - w[i] / risk)
        out[i] = surv
    return out_arr


def simulate_replication(U, double p_hosp, adm_cdf, double female_frac, band_cdf,
                         hw_cdf, icu_cdf, durations, horizon):
    """One outbreak replication driven by a pre-drawn uniform matrix.

    See ``_kernels_py.simulate_replication`` for the contract.
    """
    cdef double[:, ::1] u = np.ascontiguousarray(U, dtype=np.float64)
    cdef double[::1] adm = np.ascontiguousarray(adm_cdf, dtype=np.float64)
    cdef double[::1] bands = np.ascontiguousarray(band_cdf, dtype=np.float64)
    cdef double[:, ::1] hw = np.ascontiguousarray(hw_cdf, dtype=np.float64)
    cdef double[:, ::1] icu = np.ascontiguousarray(icu_cdf, dtype=np.float64)
    cdef double[:, :, ::1] dur = np.ascontiguousarray(durations, dtype=np.float64)
    cdef long long H = int(horizon)
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t n_bands = bands.shape[0]

    counts_arr = np.zeros((H + 1, 5), dtype=np.int64)
    cdef long long[:, ::1] counts = counts_arr
    hw_diff_arr = np.zeros(H + 2, dtype=np.int64)
    icu_diff_arr = np.zeros(H + 2, dtype=np.int64)
    cdef long long[::1] hw_diff = hw_diff_arr
    cdef long long[::1] icu_diff = icu_diff_arr

    cdef long long n_hosp = 0
    cdef long long n_trunc = 0
    cdef Py_ssize_t i, s
    cdef long long a, d_hw, d_icu, hw_end, exit_day, sex, band, hw_outcome, icu_outcome
    cdef bint to_icu, dies

    with nogil:
        for i in range(n):
            if u[i, 0] >= p_hosp:
                continue
            n_hosp += 1
            a = _invert_cdf(adm, u[i, 1])
            sex = 1 if u[i, 2] < female_frac else 0
            band = _invert_cdf(bands, u[i, 3])
            s = sex * n_bands + band

            hw_outcome = 0
            if u[i, 4] >= hw[s, 0]:
                hw_outcome += 1
            if u[i, 4] >= hw[s, 1]:
                hw_outcome += 1
            d_hw = _stay_days(dur, s, hw_outcome, u[i, 5], H)
            to_icu = hw_outcome == 0

            hw_end = a + d_hw
            if to_icu:
                icu_outcome = 1 if u[i, 6] >= icu[s, 0] else 0
                d_icu = _stay_days(dur, s, 3 + icu_outcome, u[i, 7], H)
                exit_day = hw_end + d_icu
                dies = icu_outcome == 0
            else:
                exit_day = hw_end
                dies = hw_outcome == 1

            counts[a, 4] += 1  # admissions tallied as a diff, integrated below
            hw_diff[a] += 1
            hw_diff[hw_end if hw_end <= H else H + 1] -= 1
            if to_icu and hw_end <= H:
                icu_diff[hw_end] += 1
                icu_diff[exit_day if exit_day <= H else H + 1] -= 1
            if exit_day <= H:
                if dies:
                    counts[exit_day, 2] += 1
                else:
                    counts[exit_day, 3] += 1
            else:
                n_trunc += 1

        _integrate(counts, hw_diff, icu_diff, H)

    return counts_arr, int(n_hosp), int(n_trunc)


cdef inline long long _invert_cdf(double[::1] cdf, double value) noexcept nogil:
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t last = cdf.shape[0] - 1
    while i < last and value >= cdf[i]:
        i += 1
    return i


cdef inline long long _stay_days(double[:, :, ::1] dur, Py_ssize_t s, Py_ssize_t t,
                                 double value, long long horizon) noexcept nogil:
    cdef double raw
    if dur[s, t, 2] >= 0.0:
        raw = dur[s, t, 2]
    else:
        if value < TINY_UNIFORM:
            value = TINY_UNIFORM
        raw = dur[s, t, 1] * pow(-log(value), 1.0 / dur[s, t, 0])
    raw = ceil(raw)
    if raw < 1.0:
        raw = 1.0
    if raw > horizon + 2.0:
        raw = horizon + 2.0
    return <long long> raw


cdef inline void _integrate(long long[:, ::1] counts, long long[::1] hw_diff,
                            long long[::1] icu_diff, long long H) noexcept nogil:
    cdef long long acc_hw = 0, acc_icu = 0, acc_dead = 0, acc_disch = 0, acc_adm = 0
    cdef long long day
    for day in range(H + 1):
        acc_hw += hw_diff[day]
        acc_icu += icu_diff[day]
        acc_dead += counts[day, 2]
        acc_disch += counts[day, 3]
        acc_adm += counts[day, 4]
        counts[day, 0] = acc_hw
        counts[day, 1] = acc_icu
        counts[day, 2] = acc_dead
        counts[day, 3] = acc_disch
        counts[day, 4] = acc_adm
