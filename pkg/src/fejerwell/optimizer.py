"""Selection of the packet half-width N that best matches the classical orbit.

For each central level n there is a narrow range of half-widths that makes
the packet behave classically: too few superposed states and the packet
mean is a poor (truncated-average) rendering of the bounce trajectory; too
many and the unequal level spacing dephases the packet within a period.
The default selection minimizes the RMS deviation of the position mean
from the classical sawtooth over one period, which lands on N close to
sqrt(n) across two decades of n (N = 23 at n = 500).

Two single-instant uncertainty-product objectives are kept as alternative
modes for sensitivity analysis. Note that Delta-x Delta-p evaluated at the
initial turning (t = 0) decreases monotonically with N, so that mode has
no interior minimum and pins to the top of the search window; the
far-wall-turning mode has an interior minimum but selects systematically
wider packets than the trajectory-matching objective.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classical import ClassicalOrbit, sawtooth_position
from .core import PacketSpec, WellConfig, spectral_data
from .quantum import exp_p, pair_terms, uncertainty_product

__all__ = [
    "MODES",
    "ScanRow",
    "ScanFit",
    "ScanResult",
    "default_n_grid",
    "tracking_error",
    "width_objective",
    "optimal_N",
    "scan_n",
]

MODES = ("tracking", "product-start", "product-turn")

_TRACK_POINTS = 1024


@dataclass(frozen=True)
class ScanRow:
    """Optimal half-width for one central level.

    product_min is the uncertainty product of the selected packet at
    t_eval (a turning instant, where the momentum mean vanishes); it is
    the minimized quantity only in the product-* modes.
    """

    n: int
    N_opt: int
    product_min: float
    t_eval: float
    sqrt_n: float


@dataclass(frozen=True)
class ScanFit:
    """Power-law fit N_opt ~ prefactor * n**m_exp over a scan."""

    m_exp: float
    prefactor: float
    residual: float


@dataclass(frozen=True)
class ScanResult:
    rows: list[ScanRow]
    fit: ScanFit | None


def default_n_grid(n_min: int = 10, n_max: int = 500, points: int = 12) -> list[int]:
    """Geometric grid of integer levels, deduplicated, endpoints included."""
    if points < 2 or n_min < 1 or n_max <= n_min:
        raise ValueError("need points >= 2 and 1 <= n_min < n_max")
    ratio = (n_max / n_min) ** (1.0 / (points - 1))
    return sorted({int(round(n_min * ratio**i)) for i in range(points)})


def _tracking_curve(
    cfg: WellConfig, n: int, N_max: int, t_points: int
) -> np.ndarray:
    """RMS tracking error for every half-width 1..N_max in one pass.

    The pair terms of the position mean are shared across half-widths
    (only the term set and the 1/(2N+1) weight change), so the sums for
    all N are assembled cumulatively from a single evaluation of the
    N_max term set.
    """
    sd = spectral_data(cfg, n)
    ts = np.arange(t_points) * (sd.period / t_points)
    orbit = ClassicalOrbit(a=cfg.a, p_c=sd.p_c, mu=cfg.mu)
    saw = sawtooth_position(orbit, ts)
    amp, freq, span = pair_terms(cfg, n, N_max, "position")
    partial = np.zeros((N_max + 1, t_points))
    for v in range(1, N_max + 1):
        sel = span == v
        if np.any(sel):
            partial[v] = np.cos(np.multiply.outer(ts, freq[sel])) @ amp[sel]
    cum = np.cumsum(partial, axis=0)
    weights = 1.0 / (2.0 * np.arange(N_max + 1) + 1.0)
    means = cfg.a / 2.0 + cum * weights[:, None]
    return np.sqrt(np.mean((means - saw[None, :]) ** 2, axis=1))


def tracking_error(
    cfg: WellConfig, n: int, N: int, t_points: int = _TRACK_POINTS
) -> float:
    """RMS of (position mean - classical sawtooth) over one period.

    The period grid has t_points uniform samples on [0, T), endpoint
    excluded (a periodic mean).
    """
    if N < 0 or N >= n:
        raise ValueError(f"need 0 <= N < n, got n={n}, N={N}")
    return float(_tracking_curve(cfg, n, N, t_points)[N])


def _first_momentum_zero(cfg: WellConfig, spec: PacketSpec, t_start: float) -> float:
    """First sign change of the momentum mean after t_start, bisected."""
    period = spectral_data(cfg, spec.n).period
    ts = np.linspace(t_start, t_start + 0.6 * period, 1201)
    ps = exp_p(cfg, spec, ts)
    flips = np.nonzero(np.diff(np.sign(ps)) != 0)[0]
    if len(flips) == 0:
        raise RuntimeError(f"no momentum zero found after t={t_start}")
    lo, hi = ts[flips[0]], ts[flips[0] + 1]
    p_lo = exp_p(cfg, spec, lo)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if math.copysign(1.0, exp_p(cfg, spec, mid)) == math.copysign(1.0, p_lo):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def width_objective(
    cfg: WellConfig,
    n: int,
    N: int,
    mode: str = "tracking",
    t_points: int = _TRACK_POINTS,
) -> float:
    """The quantity optimal_N minimizes, for one candidate half-width."""
    if mode == "tracking":
        return tracking_error(cfg, n, N, t_points)
    spec = PacketSpec(n=n, N=N)
    if mode == "product-start":
        return uncertainty_product(cfg, spec, 0.0)
    if mode == "product-turn":
        t_turn = _first_momentum_zero(cfg, spec, 0.4 * spectral_data(cfg, n).period)
        return uncertainty_product(cfg, spec, t_turn)
    raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def optimal_N(
    cfg: WellConfig,
    n: int,
    N_min: int = 1,
    N_max: int | None = None,
    mode: str = "tracking",
    t_points: int = _TRACK_POINTS,
) -> ScanRow:
    """Exhaustive integer scan for the best packet half-width at level n.

    The search window defaults to [1, min(n-1, ceil(4*sqrt(n)))]. Ties
    break toward the smaller N (the more monochromatic packet).
    """
    if n < 4:
        raise ValueError(f"need n >= 4, got n={n}")
    if N_max is None:
        N_max = min(n - 1, math.ceil(4.0 * math.sqrt(n)))
    if not (1 <= N_min <= N_max < n):
        raise ValueError(f"empty or invalid search range [{N_min}, {N_max}] for n={n}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")

    if mode == "tracking":
        curve = _tracking_curve(cfg, n, N_max, t_points)[N_min : N_max + 1]
        best = N_min + int(np.argmin(curve))
    else:
        best, best_val = N_min, None
        for N in range(N_min, N_max + 1):
            val = width_objective(cfg, n, N, mode=mode, t_points=t_points)
            if best_val is None or val < best_val:
                best, best_val = N, val

    spec = PacketSpec(n=n, N=best)
    if mode == "product-turn":
        t_eval = _first_momentum_zero(cfg, spec, 0.4 * spectral_data(cfg, n).period)
    else:
        t_eval = 0.0
    return ScanRow(
        n=n,
        N_opt=best,
        product_min=uncertainty_product(cfg, spec, t_eval),
        t_eval=t_eval,
        sqrt_n=math.sqrt(n),
    )


def scan_n(
    cfg: WellConfig,
    n_values: list[int] | None = None,
    mode: str = "tracking",
    t_points: int = _TRACK_POINTS,
) -> ScanResult:
    """optimal_N over a list of levels plus a log-log fit of N_opt vs n.

    n_values must be ascending (repeats allowed); defaults to the
    12-point geometric grid on [10, 500]. With fewer than 3 distinct
    levels the fit is skipped (fit=None).
    """
    if n_values is None:
        n_values = default_n_grid()
    if any(b < a for a, b in zip(n_values, n_values[1:])):
        raise ValueError("n_values must be ascending")
    rows = [optimal_N(cfg, n, mode=mode, t_points=t_points) for n in n_values]

    fit = None
    if len(set(n_values)) >= 3:
        log_n = np.log([r.n for r in rows])
        log_N = np.log([r.N_opt for r in rows])
        slope, intercept = np.polyfit(log_n, log_N, 1)
        resid = log_N - (slope * log_n + intercept)
        fit = ScanFit(
            m_exp=float(slope),
            prefactor=float(np.exp(intercept)),
            residual=float(np.sqrt(np.mean(resid**2))),
        )
    return ScanResult(rows=rows, fit=fit)
