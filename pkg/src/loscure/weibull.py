"""Two-parameter Weibull survival laws: evaluation, sampling, and weighted
least-squares fitting to nonparametric step curves.

The fit minimizes the squared distance between the Weibull survival function
and the step estimate at its jump points, weighting each point by the jump
mass so heavily supported drops dominate sparse tails. The search runs a
Nelder-Mead simplex on (log shape, log scale), which keeps both parameters
positive without constraint handling; it stops when the simplex diameter in
log space falls below ``tol`` or after ``max_iterations`` sweeps.
"""

import json
import math
import warnings
from dataclasses import dataclass
from typing import IO

import numpy as np

from .curves import SurvivalCurve

_LN2 = math.log(2.0)
_LN4 = math.log(4.0)
_TINY_UNIFORM = 1e-300


@dataclass(frozen=True)
class WeibullParams:
    """Shape/scale pair (k, lambda); survival is exp(-(t/lambda)^k)."""

    shape: float
    scale: float

    def __post_init__(self):
        object.__setattr__(self, "shape", float(self.shape))
        object.__setattr__(self, "scale", float(self.scale))
        if not (math.isfinite(self.shape) and self.shape > 0):
            raise ValueError("shape must be positive and finite")
        if not (math.isfinite(self.scale) and self.scale > 0):
            raise ValueError("scale must be positive and finite")


@dataclass(frozen=True)
class FitReport:
    """Outcome of a curve fit: parameters, weighted SSE on the survival
    scale, iteration count, and convergence status. ``trace`` (when
    requested) holds the best objective value after each simplex iteration."""

    params: WeibullParams
    sse: float
    iterations: int
    converged: bool
    trace: tuple[float, ...] | None = None

    def to_json(self, dest: str | IO[str] | None = None) -> str:
        payload = {
            "shape": self.params.shape,
            "scale": self.params.scale,
            "sse": self.sse,
            "iterations": self.iterations,
            "converged": self.converged,
        }
        text = json.dumps(payload, indent=2)
        if dest is not None:
            if isinstance(dest, str):
                with open(dest, "w") as handle:
                    handle.write(text + "\n")
            else:
                dest.write(text + "\n")
        return text


def weibull_survival(params: WeibullParams, t):
    """Survival exp(-(t/scale)^shape) for scalar or array t >= 0."""
    t_arr = np.asarray(t, dtype=np.float64)
    if np.any(t_arr < 0):
        raise ValueError("t must be nonnegative")
    out = np.exp(-((t_arr / params.scale) ** params.shape))
    return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out


def weibull_sample(params: WeibullParams, rng: np.random.Generator, size=None):
    """Inverse-transform sample scale * (-ln U)^(1/shape) from a seeded
    generator; U is clamped away from 0 so the transform stays finite."""
    u = np.maximum(rng.random(size), _TINY_UNIFORM)
    out = params.scale * (-np.log(u)) ** (1.0 / params.shape)
    return float(out) if size is None else out


def fit_weibull(
    curve: SurvivalCurve,
    max_iterations: int = 500,
    tol: float = 1e-8,
    trace: bool = False,
) -> FitReport:
    """Fit a Weibull survival function to a step curve by weighted least
    squares at the jump points (weights = jump masses)."""
    tk = curve.jump_times
    sk = curve.values
    if tk.size < 2:
        raise ValueError("underdetermined fit")
    if curve.plateau >= 0.5:
        warnings.warn(
            "more than half the mass never experiences the event; "
            "fit the latency curve instead",
            stacklevel=2,
        )
    mk = np.r_[1.0, sk[:-1]] - sk  # jump masses

    def objective(theta: np.ndarray) -> float:
        k = math.exp(theta[0])
        lam = math.exp(theta[1])
        with np.errstate(over="ignore"):
            resid = np.exp(-((tk / lam) ** k)) - sk
            value = float(np.sum(mk * resid * resid))
        if not math.isfinite(value):
            raise ValueError("non-finite objective")
        return value

    theta0 = _moment_match_start(tk, sk, curve.plateau)
    best_theta, best_f, iterations, converged, history = _nelder_mead(
        objective, theta0, max_iterations=max_iterations, tol=tol
    )
    params = WeibullParams(shape=math.exp(best_theta[0]), scale=math.exp(best_theta[1]))
    return FitReport(
        params=params,
        sse=best_f,
        iterations=iterations,
        converged=converged,
        trace=tuple(history) if trace else None,
    )


def _moment_match_start(tk, sk, plateau) -> np.ndarray:
    """Closed-form start from the curve's median and upper quartile.

    Levels are placed inside (plateau, 1) so curves that never reach 0.5
    still yield a usable start; for latency curves (plateau 0) they are the
    plain 0.5 and 0.25 survival levels. Crossing times of a Weibull at those
    levels give two equations in (k, lambda).
    """
    susceptible = 1.0 - plateau
    level_med = plateau + 0.5 * susceptible
    level_q = plateau + 0.25 * susceptible
    t_med = tk[np.argmax(sk <= level_med)] if np.any(sk <= level_med) else tk[-1]
    t_q = tk[np.argmax(sk <= level_q)] if np.any(sk <= level_q) else tk[-1]
    if t_q > t_med > 0:
        k0 = _LN2 / math.log(t_q / t_med)
        k0 = min(max(k0, 0.05), 50.0)
    else:
        k0 = 1.0
    anchor = t_med if t_med > 0 else float(tk[-1])
    lam0 = anchor / _LN2 ** (1.0 / k0)
    return np.array([math.log(k0), math.log(lam0)])


def _nelder_mead(objective, theta0, max_iterations, tol, step=0.25):
    """Textbook Nelder-Mead (reflection 1, expansion 2, contraction 0.5,
    shrink 0.5) on a 2-vector. Returns (theta, f, iterations, converged,
    best-objective history)."""
    dim = theta0.size
    simplex = [theta0.copy()]
    for i in range(dim):
        vertex = theta0.copy()
        vertex[i] += step
        simplex.append(vertex)
    fvals = [objective(v) for v in simplex]
    history = []
    iterations = 0
    converged = False

    while iterations < max_iterations:
        order = np.argsort(fvals, kind="stable")
        simplex = [simplex[i] for i in order]
        fvals = [fvals[i] for i in order]
        if _diameter(simplex) < tol:
            converged = True
            break
        iterations += 1

        centroid = np.mean(simplex[:-1], axis=0)
        worst = simplex[-1]
        reflected = centroid + (centroid - worst)
        f_reflected = objective(reflected)
        if f_reflected < fvals[0]:
            expanded = centroid + 2.0 * (centroid - worst)
            f_expanded = objective(expanded)
            if f_expanded < f_reflected:
                simplex[-1], fvals[-1] = expanded, f_expanded
            else:
                simplex[-1], fvals[-1] = reflected, f_reflected
        elif f_reflected < fvals[-2]:
            simplex[-1], fvals[-1] = reflected, f_reflected
        else:
            if f_reflected < fvals[-1]:
                contracted = centroid + 0.5 * (reflected - centroid)
            else:
                contracted = centroid - 0.5 * (centroid - worst)
            f_contracted = objective(contracted)
            if f_contracted < min(f_reflected, fvals[-1]):
                simplex[-1], fvals[-1] = contracted, f_contracted
            else:
                best = simplex[0]
                for i in range(1, dim + 1):
                    simplex[i] = best + 0.5 * (simplex[i] - best)
                    fvals[i] = objective(simplex[i])
        history.append(min(fvals))

    order = np.argsort(fvals, kind="stable")
    best = order[0]
    return simplex[best], fvals[best], iterations, converged, history


def _diameter(simplex) -> float:
    return max(
        float(np.linalg.norm(a - b)) for i, a in enumerate(simplex) for b in simplex[i + 1 :]
    )
