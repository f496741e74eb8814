"""Derivation of most-powerful Bayesian alternatives and evidence thresholds.

For the noncentral chi-squared test the Bayes factor g(y, theta) is strictly
increasing in the statistic y, so each alternative theta induces an upper
rejection interval (r(theta), inf) where r(theta) is the unique root of
g = gamma.  The alternative whose interval covers all the others is the one
minimizing r, and this module locates it by a log-spaced scan followed by
golden-section refinement.

Matching a classical test of size alpha exploits the same monotonicity the
other way around: with y_alpha the classical critical value,

    min_theta r(theta; gamma) = y_alpha   <=>   gamma = max_theta g(y_alpha, theta),

because r(theta) >= y_alpha for every theta exactly when g(y_alpha, theta)
never exceeds gamma.  The matched threshold is therefore found by a single
one-dimensional maximization instead of an outer root search in gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize as _opt

from .bayes import ChiSqTestSpec, ExpFamilyModel, _log_bf_core
from .errors import BracketingError, DomainError, NoRootError
from .special import chisq_quantile

__all__ = [
    "UmpbtSolution",
    "CurvePoint",
    "DEFAULT_CURVE_ALPHAS",
    "rejection_boundary",
    "rejection_boundary_grid",
    "solve_umpbt_chisq",
    "match_gamma_to_alpha",
    "expfam_boundary",
    "solve_umpbt_expfam",
    "gamma_vs_df_curve",
]

DEFAULT_CURVE_ALPHAS = (0.05, 0.01, 0.005, 0.001)

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_SCAN_POINTS = 200
_SCAN_THETA_LO = 1e-4
_REFINE_TOL = 1e-8
_TIE_TOL = 1e-12


@dataclass(frozen=True)
class UmpbtSolution:
    """Alternative hypothesis and rejection boundary of a derived test.

    ``direction`` is +1 when the rejection region is the upper interval
    (boundary, sup) and -1 when it is the lower one.  ``df`` is set for
    chi-squared solutions and ``None`` for exponential-family ones, whose
    ``theta_star``/``boundary`` may be negative (e.g. a lower-sided normal
    mean).
    """

    theta_star: float
    boundary: float
    gamma: float
    direction: int
    df: float | None = None

    def __post_init__(self) -> None:
        if not (self.gamma > 1):
            raise DomainError(f"evidence threshold must exceed 1, got {self.gamma}")
        if self.direction not in (-1, 1):
            raise DomainError(f"direction must be -1 or +1, got {self.direction}")
        if not math.isfinite(self.theta_star) or not math.isfinite(self.boundary):
            raise DomainError("solution fields must be finite")


@dataclass(frozen=True)
class CurvePoint:
    """One (df, alpha) point of the threshold-versus-df curve."""

    df: float
    alpha: float
    gamma: float
    theta_star: float

    def __post_init__(self) -> None:
        if not (self.gamma > 1):
            raise DomainError(f"evidence threshold must exceed 1, got {self.gamma}")
        if not (self.theta_star > 0):
            raise DomainError(f"theta_star must be positive, got {self.theta_star}")


def _golden_min(f, a: float, b: float, tol: float) -> tuple[float, float]:
    """Golden-section minimum of a unimodal f on [a, b] to bracket width tol."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def _check_boundary_args(theta: float, gamma: float, df: float) -> None:
    if not (df > 0):
        raise DomainError(f"degrees of freedom must be positive, got {df}")
    if not (theta > 0) or not math.isfinite(theta):
        raise DomainError(f"noncentrality must be positive, got {theta}")
    if not (gamma > 0) or not math.isfinite(gamma):
        raise DomainError(f"evidence threshold must be positive, got {gamma}")
    if gamma <= 1.0:
        # The Bayes factor tends to exp(-theta/2) < 1 as y -> 0 and grows
        # without bound, so only thresholds above 1 guarantee an upper
        # rejection interval for every alternative.
        raise NoRootError(
            f"threshold gamma={gamma} does not exceed 1; the rejection region "
            "is not an upper interval"
        )


def _bracket_high(theta: np.ndarray, log_gamma: float, df: float) -> np.ndarray:
    z_up = theta / 2.0 + log_gamma + df + 12.0
    return np.maximum(4.0 * z_up**2 / theta, df + 4.0 * log_gamma + 40.0)


def rejection_boundary_grid(thetas: np.ndarray, gamma: float, df: float) -> np.ndarray:
    """Vectorized :func:`rejection_boundary` over an array of alternatives.

    Bisects log g(y, theta) = log gamma in log y simultaneously for every
    element; the residual on the log Bayes factor stays below ~1e-10.
    """
    thetas = np.asarray(thetas, dtype=float)
    for t in (thetas.min(), thetas.max()):
        _check_boundary_args(float(t), gamma, df)
    log_gamma = math.log(gamma)

    lo = np.full_like(thetas, 1e-12)
    hi = _bracket_high(thetas, log_gamma, df)
    for _ in range(200):
        short = _log_bf_core(hi, thetas, df) < log_gamma
        if not np.any(short):
            break
        hi = np.where(short, hi * 4.0, hi)
    else:  # pragma: no cover - g is unbounded in y
        raise NoRootError("failed to bracket the rejection boundary from above")

    a = np.log(lo)
    b = np.log(hi)
    while float(np.max(b - a)) > 1e-12:
        mid = 0.5 * (a + b)
        below = _log_bf_core(np.exp(mid), thetas, df) < log_gamma
        a = np.where(below, mid, a)
        b = np.where(below, b, mid)
    return np.exp(0.5 * (a + b))


def rejection_boundary(theta: float, gamma: float, df: float) -> float:
    """The unique statistic value y with g(y, theta) = gamma.

    The rejection region of the test with alternative ``theta`` is the
    upper interval (boundary, inf) because dg/dy > 0 everywhere.
    """
    _check_boundary_args(theta, gamma, df)
    log_gamma = math.log(gamma)
    theta_arr = np.array([float(theta)])

    def f(y: float) -> float:
        return float(_log_bf_core(np.array([y]), theta_arr, df)[0]) - log_gamma

    lo = 1e-12
    hi = float(_bracket_high(theta_arr, log_gamma, df)[0])
    for _ in range(200):
        if f(hi) >= 0.0:
            break
        hi *= 4.0
    else:  # pragma: no cover - g is unbounded in y
        raise NoRootError("failed to bracket the rejection boundary from above")
    return float(_opt.brentq(f, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps,
                             maxiter=200))


def _refine_minimum(objective, thetas: np.ndarray, values: np.ndarray,
                    index: int) -> tuple[float, float]:
    """Golden-refine the minimal scan cell; re-refine any cell that beats it.

    Ties within 1e-12 resolve to the smallest theta so results are
    deterministic.
    """
    visited = set()
    i = index
    best_theta, best_value = math.nan, math.inf
    for _ in range(8):
        visited.add(i)
        a = thetas[max(i - 1, 0)]
        b = thetas[min(i + 1, len(thetas) - 1)]
        tol = _REFINE_TOL * (1.0 + thetas[i])
        x, fx = _golden_min(objective, float(a), float(b), tol)
        if fx < best_value - _TIE_TOL or (abs(fx - best_value) <= _TIE_TOL
                                          and x < best_theta):
            best_theta, best_value = x, fx
        # post-hoc global check: no scanned point may beat the refined minimum
        beating = np.flatnonzero(values < best_value - _TIE_TOL * (1.0 + abs(best_value)))
        beating = [j for j in beating if j not in visited]
        if not beating:
            break
        i = int(beating[int(np.argmin(values[beating]))])
    return best_theta, best_value


def _tie_break_argmin(values: np.ndarray) -> int:
    vmin = float(values.min())
    return int(np.flatnonzero(values <= vmin + _TIE_TOL)[0])


def solve_umpbt_chisq(spec: ChiSqTestSpec) -> UmpbtSolution:
    """Most-powerful alternative for an explicit evidence threshold.

    Minimizes the rejection boundary r(theta) over theta > 0 with a
    200-point log-spaced scan (the upper scan edge starts at
    10 (df + 2 log gamma) and doubles while r still decreases there),
    golden-section refinement to bracket width 1e-8 (1 + theta), and a
    global check that no scanned point beats the refined minimum.
    """
    if spec.gamma is None:
        raise DomainError("solve_umpbt_chisq requires a spec with gamma set")
    gamma, df = float(spec.gamma), float(spec.df)
    log_gamma = math.log(gamma)

    theta_lo = _SCAN_THETA_LO
    theta_hi = 10.0 * (df + 2.0 * log_gamma)
    for _ in range(60):
        thetas = np.geomspace(theta_lo, theta_hi, _SCAN_POINTS)
        r_values = rejection_boundary_grid(thetas, gamma, df)
        i0 = _tie_break_argmin(r_values)
        if i0 == len(thetas) - 1 or r_values[-1] <= r_values[-2]:
            theta_hi *= 2.0
        elif i0 == 0:
            theta_lo /= 10.0
        else:
            break
    else:
        raise BracketingError(
            f"could not bracket an interior minimum of r(theta) for "
            f"gamma={gamma}, df={df}"
        )

    theta_star, boundary = _refine_minimum(
        lambda t: rejection_boundary(t, gamma, df), thetas, r_values, i0
    )
    return UmpbtSolution(theta_star=theta_star, boundary=boundary, gamma=gamma,
                         direction=1, df=df)


def match_gamma_to_alpha(spec: ChiSqTestSpec) -> UmpbtSolution:
    """Evidence threshold whose rejection region matches a classical test.

    With y_alpha the upper-alpha critical value of the central chi-squared
    law, the matched threshold is gamma = max_theta g(y_alpha, theta) and
    the maximizer is the matched alternative: r(theta) >= y_alpha for all
    theta precisely when g(y_alpha, theta) <= gamma, with equality at the
    maximizer, so the minimal boundary equals y_alpha exactly.
    """
    if spec.alpha is None:
        raise DomainError("match_gamma_to_alpha requires a spec with alpha set")
    alpha, df = float(spec.alpha), float(spec.df)
    y_alpha = chisq_quantile(1.0 - alpha, df)
    if y_alpha <= 0.0:
        raise BracketingError(f"degenerate critical value for alpha={alpha}, df={df}")
    y_arr = np.array([y_alpha])

    def neg_log_bf(theta: float) -> float:
        return -float(_log_bf_core(y_arr, np.array([theta]), df)[0])

    theta_lo = _SCAN_THETA_LO
    theta_hi = 4.0 * y_alpha + df + 10.0
    for _ in range(60):
        thetas = np.geomspace(theta_lo, theta_hi, _SCAN_POINTS)
        values = _log_bf_core(np.full_like(thetas, y_alpha), thetas, df)
        i0 = _tie_break_argmin(-values)
        if i0 == len(thetas) - 1:
            theta_hi *= 2.0
        elif i0 == 0:
            theta_lo /= 10.0
        else:
            break
    else:
        raise BracketingError(
            f"could not bracket the matched threshold for alpha={alpha}, df={df}"
        )

    theta_star, neg_best = _refine_minimum(neg_log_bf, thetas, -values, i0)
    log_gamma = -neg_best
    gamma = math.exp(log_gamma)
    if not gamma > 1.0:
        raise BracketingError(
            f"no threshold above 1 matches alpha={alpha} at df={df}: the "
            f"critical value {y_alpha:.6g} is not in the evidence region"
        )
    return UmpbtSolution(theta_star=theta_star, boundary=y_alpha, gamma=gamma,
                         direction=1, df=df)


def expfam_boundary(theta: float, gamma: float, model: ExpFamilyModel) -> float:
    """Root of g(y, theta) = gamma for a one-parameter exponential family.

    y = [log gamma + n (A(theta) - A(theta0))] / [eta(theta) - eta(theta0)].
    """
    if not (gamma > 1) or not math.isfinite(gamma):
        raise DomainError(f"evidence threshold must exceed 1, got {gamma}")
    model.check_alternative(theta)
    denom = float(model.eta(theta)) - float(model.eta(model.theta0))
    if denom == 0.0:
        raise DomainError(
            f"natural parameter takes the same value at theta={theta} and "
            f"theta0={model.theta0}; the boundary is undefined"
        )
    num = math.log(gamma) + model.n * (
        float(model.log_partition(theta)) - float(model.log_partition(model.theta0))
    )
    return num / denom


def _expfam_objective_grid(model: ExpFamilyModel, gamma: float,
                           thetas: np.ndarray) -> np.ndarray:
    v = model.direction_sign()
    denom = model.eta(thetas) - float(model.eta(model.theta0))
    num = math.log(gamma) + model.n * (
        model.log_partition(thetas) - float(model.log_partition(model.theta0))
    )
    return v * num / denom


def solve_umpbt_expfam(model: ExpFamilyModel, gamma: float) -> UmpbtSolution:
    """Most-powerful one-sided alternative for an exponential-family test.

    Minimizes v * boundary(theta) over the alternative side, where v is the
    sign of eta(theta) - eta(theta0) there.  The objective diverges at
    theta0, so the scan starts at an offset of 1e-6 on the model's natural
    scale and uses log-spaced offsets; unbounded sides double their span
    while the objective still decreases at the far edge.
    """
    if not (gamma > 1) or not math.isfinite(gamma):
        raise DomainError(f"evidence threshold must exceed 1, got {gamma}")
    lo_dom, hi_dom = model.parameter_interval()
    sign = 1.0 if model.side == "greater" else -1.0
    if model.kind == "binomial-proportion":
        scale = min(model.theta0, 1.0 - model.theta0)
    elif model.kind == "normal-mean-known-variance":
        scale = math.sqrt(model.nuisance)
    else:
        scale = model.theta0

    edge = hi_dom if model.side == "greater" else lo_dom
    bounded = math.isfinite(edge)
    if bounded:
        span_cap = abs(edge - model.theta0) * (1.0 - 1e-9)
    else:
        span_cap = math.inf
    span = scale * (4.0 + 4.0 * math.sqrt(2.0 * math.log(gamma) / model.n))
    span = min(span, span_cap)
    delta = 1e-6 * scale

    for _ in range(60):
        offsets = np.geomspace(delta, span, _SCAN_POINTS)
        thetas = model.theta0 + sign * offsets
        values = _expfam_objective_grid(model, gamma, thetas)
        i0 = _tie_break_argmin(values)
        if i0 == len(thetas) - 1 and not bounded:
            span *= 2.0
        elif i0 == 0:
            delta /= 10.0
        else:
            break
    else:
        raise BracketingError(
            f"could not bracket the objective minimum for {model.kind} "
            f"(side={model.side}, gamma={gamma})"
        )

    def objective(theta: float) -> float:
        return model.direction_sign() * expfam_boundary(theta, gamma, model)

    lo_cell = thetas[max(i0 - 1, 0)]
    hi_cell = thetas[min(i0 + 1, len(thetas) - 1)]
    a, b = (lo_cell, hi_cell) if lo_cell <= hi_cell else (hi_cell, lo_cell)
    tol = _REFINE_TOL * (1.0 + abs(thetas[i0]))
    theta_star, best = _golden_min(objective, float(a), float(b), tol)
    beat = np.flatnonzero(values < best - _TIE_TOL * (1.0 + abs(best)))
    for j in beat[:8]:
        a2 = thetas[max(j - 1, 0)]
        b2 = thetas[min(j + 1, len(thetas) - 1)]
        a2, b2 = (a2, b2) if a2 <= b2 else (b2, a2)
        x, fx = _golden_min(objective, float(a2), float(b2),
                            _REFINE_TOL * (1.0 + abs(thetas[j])))
        if fx < best - _TIE_TOL:
            theta_star, best = x, fx

    v = model.direction_sign()
    return UmpbtSolution(
        theta_star=float(theta_star),
        boundary=expfam_boundary(float(theta_star), gamma, model),
        gamma=float(gamma),
        direction=v,
        df=None,
    )


def gamma_vs_df_curve(alphas, df_max: int) -> list[CurvePoint]:
    """Matched (gamma, theta_star) for df = 1..df_max at each size in alphas.

    Points are emitted in deterministic (df, alpha) order; solver failures
    propagate with the offending pair attached to the message.
    """
    alphas = [float(a) for a in alphas]
    if not alphas:
        raise DomainError("alphas must be a nonempty list")
    for a in alphas:
        if not (0.0 < a < 1.0):
            raise DomainError(f"significance level must lie in (0, 1), got {a}")
    if int(df_max) != df_max or df_max < 1:
        raise DomainError(f"df_max must be a positive integer, got {df_max}")

    points: list[CurvePoint] = []
    for df in range(1, int(df_max) + 1):
        for alpha in alphas:
            try:
                sol = match_gamma_to_alpha(ChiSqTestSpec(df=float(df), alpha=alpha))
            except Exception as exc:
                raise type(exc)(f"df={df}, alpha={alpha}: {exc}") from exc
            points.append(CurvePoint(df=float(df), alpha=alpha, gamma=sol.gamma,
                                     theta_star=sol.theta_star))
    return points
