"""Time-delayed negative feedback on the favorability constants.

The static constants become history-dependent:

    c_i(t) = baseline_i - beta * p_i(t - tau),

so a component that held a large share tau steps ago sees its attraction
reduced now.  Small beta leaves the static fixed point intact; larger
values destabilize it into sustained oscillation (invariant circles,
near-resonant cycles) and eventually irregular aperiodic motion.

The baseline has two readings: ``per_component`` takes the supplied vector
entry, ``global_max`` replaces every baseline with the largest supplied
constant.  global_max is the default: it is the reading that reproduces
the reference oscillation regimes for the four-component benchmark
(per_component turns the strong-feedback case aperiodic).  The regime
acceptance test exercises both and reports which one reproduces them.
"""

from __future__ import annotations

import multiprocessing
from collections import deque
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .core import DimensionError, DomainViolationError, Favorability, SimplexState
from .dynamics import Trajectory

PER_COMPONENT = "per_component"
GLOBAL_MAX = "global_max"

REGIME_FIXED_POINT = "fixed_point"
REGIME_PERIODIC = "periodic"
REGIME_QUASI_PERIODIC = "quasi_periodic"
REGIME_APERIODIC = "aperiodic"

# Fraction of the tail diameter at which a recurrence counts as periodic.
# An orbit that closes to within 2 percent of its own extent is a cycle at
# phase-portrait resolution; exact recurrence below tol_fp is still
# accepted for analytically locked orbits.
PERIOD_RTOL = 0.02

# Defaults tuned for the four-component benchmark configuration.
DEFAULT_TOL_FP = 1e-8
DEFAULT_WINDOW = 2000
DEFAULT_TRANSIENT = 10_000
DEFAULT_STEPS = 30_000


@dataclass(frozen=True)
class DelayConfig:
    """Feedback strength, lag and baseline interpretation."""

    c_base: Favorability
    beta: float
    tau: int
    baseline_mode: str = GLOBAL_MAX

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")
        if self.tau < 0:
            raise ValueError(f"tau must be >= 0, got {self.tau}")
        if self.baseline_mode not in (PER_COMPONENT, GLOBAL_MAX):
            raise ValueError(f"unknown baseline mode {self.baseline_mode!r}")

    def baseline(self) -> np.ndarray:
        if self.baseline_mode == PER_COMPONENT:
            return self.c_base.c
        return np.full(self.c_base.n, float(np.max(self.c_base.c)))


class HistoryBuffer:
    """Ring of the tau+1 most recent states; the oldest is p(t - tau).

    Warm-started by repeating the initial state over the whole prehistory
    window, the standard convention for delay systems (and the one that
    keeps the beta=0 reduction exact).
    """

    def __init__(self, initial: SimplexState, tau: int):
        if tau < 0:
            raise ValueError(f"tau must be >= 0, got {tau}")
        self._states = deque([initial] * (tau + 1), maxlen=tau + 1)

    def __len__(self) -> int:
        return len(self._states)

    @property
    def delayed(self) -> SimplexState:
        """p(t - tau), the oldest entry."""
        return self._states[0]

    @property
    def current(self) -> SimplexState:
        return self._states[-1]

    def push(self, state: SimplexState) -> None:
        self._states.append(state)


def effective_c(history: HistoryBuffer, cfg: DelayConfig) -> np.ndarray:
    """Favorability vector in force now: baseline minus beta times the
    delayed own share.  May be negative; the step itself polices the
    domain."""
    return cfg.baseline() - cfg.beta * history.delayed.p


def _check_domain(p: np.ndarray, factors: np.ndarray, denom: float, t: Optional[int]) -> None:
    where = f" at step {t}" if t is not None else ""
    bad = np.flatnonzero((p > 0.0) & (factors <= 0.0))
    if bad.size:
        raise DomainViolationError(
            f"nonpositive multiplier for component {int(bad[0]) + 1}{where} "
            f"(factor {factors[bad[0]]!r}); the feedback pushed the map off the simplex"
        )
    if denom <= 0.0:
        raise DomainViolationError(f"nonpositive normalizer {denom!r}{where}")


def step_delayed(history: HistoryBuffer, cfg: DelayConfig) -> SimplexState:
    """One delayed-map step from the buffered history.

    Identical arithmetic to the static step with the effective favorability
    substituted; at beta=0 the two coincide exactly.
    """
    p = history.current.p
    n = p.size
    if cfg.c_base.n != n:
        raise DimensionError(f"dimension mismatch: state n={n}, baseline n={cfg.c_base.n}")
    c_eff = effective_c(history, cfg)
    factors = (n - 1.0) + c_eff * (1.0 - p)
    denom = (n - 1.0) + float(np.dot(c_eff, p * (1.0 - p)))
    _check_domain(p, factors, denom, None)
    return SimplexState(p * factors / denom)


def simulate_delayed(
    p0: SimplexState,
    cfg: DelayConfig,
    steps: int = DEFAULT_STEPS,
    transient: int = DEFAULT_TRANSIENT,
) -> Trajectory:
    """Run the delayed map and record the post-transient states.

    Prehistory is constant at p0 on [-tau, 0].  Each step renormalizes by
    the weight sum itself: with strongly negative effective favorability
    the normalizer drops below n-1 and any drift in the coordinate sum
    would otherwise be amplified geometrically.
    """
    if not steps > transient >= 0:
        raise ValueError(f"need steps > transient >= 0, got steps={steps}, transient={transient}")
    if cfg.c_base.n != p0.n:
        raise DimensionError(f"dimension mismatch: state n={p0.n}, baseline n={cfg.c_base.n}")
    n = p0.n
    base = cfg.baseline()
    beta = cfg.beta
    tau = cfg.tau

    p = p0.p.copy()
    ring = np.tile(p, (tau + 1, 1))
    oldest = 0
    recorded = []
    times = []
    if transient == 0:
        recorded.append(p.copy())
        times.append(0)
    prev_disp = np.inf
    for t in range(1, steps + 1):
        c_eff = base - beta * ring[oldest]
        factors = (n - 1.0) + c_eff * (1.0 - p)
        weights = p * factors
        total = weights.sum()
        if total <= 0.0 or np.any((p > 0.0) & (factors <= 0.0)):
            _check_domain(p, factors, float(total), t)
        new = weights / total
        prev_disp = float(np.max(np.abs(new - p)))
        p = new
        ring[oldest] = p
        oldest = (oldest + 1) % (tau + 1)
        if t >= transient:
            recorded.append(p.copy())
            times.append(t)

    return Trajectory(
        states=tuple(SimplexState(q) for q in recorded),
        times=tuple(times),
        steps_taken=steps,
        converged=prev_disp < 1e-12,
        final_residual=prev_disp,
    )


@dataclass(frozen=True)
class RegimeReport:
    """Attractor label for a post-transient trajectory tail."""

    regime: str
    period: Optional[int]
    tail_extrema: np.ndarray

    def __post_init__(self):
        if (self.regime == REGIME_PERIODIC) != (self.period is not None):
            raise ValueError("period must be present exactly for periodic regimes")
        if self.period is not None and self.period < 2:
            raise ValueError(f"period must be >= 2, got {self.period}")


def local_extrema(x: np.ndarray) -> np.ndarray:
    """Values of strict local maxima and minima, in time order."""
    if x.size < 3:
        return np.empty(0)
    mid = x[1:-1]
    is_max = (mid > x[:-2]) & (mid > x[2:])
    is_min = (mid < x[:-2]) & (mid < x[2:])
    return mid[is_max | is_min]


def _dominant_pair_power(x: np.ndarray) -> float:
    """Fraction of oscillatory power carried by the two dominant
    frequencies (Hann-windowed periodogram, each peak aggregated with its
    immediate leakage neighbors)."""
    y = (x - x.mean()) * np.hanning(x.size)
    power = np.abs(np.fft.rfft(y)) ** 2
    power[0] = 0.0
    total = power.sum()
    if total <= 0.0:
        return 0.0
    captured = 0.0
    work = power.copy()
    for _ in range(2):
        k = int(np.argmax(work))
        lo, hi = max(k - 1, 0), min(k + 2, work.size)
        captured += work[lo:hi].sum()
        work[lo:hi] = 0.0
    return float(captured / total)


def classify_regime(
    traj: Trajectory,
    tol_fp: float = DEFAULT_TOL_FP,
    window: int = DEFAULT_WINDOW,
    coordinate: int = 0,
    period_rtol: float = PERIOD_RTOL,
) -> RegimeReport:
    """Label the attractor seen in the trajectory tail.

    fixed_point: tail diameter below tol_fp.  periodic: some minimal
    q in [2, window/2] recurs across the whole window, at tolerance
    max(tol_fp, period_rtol * diameter) (recurrence sharper than the
    attractor's own scale is what a finite transient can deliver).
    quasi_periodic: no period, but two dominant frequencies carry over 90
    percent of the oscillatory power.  aperiodic: everything else.
    """
    if len(traj.states) < window:
        raise ValueError(f"trajectory tail has {len(traj.states)} states, need >= {window}")
    tail = traj.as_array()[-window:]
    extrema = local_extrema(tail[:, coordinate])

    diameter = float(np.max(tail.max(axis=0) - tail.min(axis=0)))
    if diameter < tol_fp:
        return RegimeReport(REGIME_FIXED_POINT, None, np.array([tail[-1, coordinate]]))

    tol_period = max(tol_fp, period_rtol * diameter)
    for q in range(2, window // 2 + 1):
        if float(np.max(np.abs(tail[q:] - tail[:-q]))) < tol_period:
            return RegimeReport(REGIME_PERIODIC, q, extrema)

    if _dominant_pair_power(tail[:, coordinate]) > 0.9:
        return RegimeReport(REGIME_QUASI_PERIODIC, None, extrema)
    return RegimeReport(REGIME_APERIODIC, None, extrema)


@dataclass(frozen=True)
class BetaSample:
    """One feedback strength of a sweep: extrema cloud plus regime label.

    ``error`` records a domain violation for that beta; the sweep itself
    continues past failed samples.
    """

    beta: float
    extrema: np.ndarray
    regime: str
    period: Optional[int] = None
    error: Optional[str] = None


def _sweep_one(args) -> BetaSample:
    p0, cfg, beta, steps, transient, coordinate, tol_fp, window = args
    run_cfg = replace(cfg, beta=float(beta))
    window = min(window, steps - transient + 1)
    try:
        traj = simulate_delayed(p0, run_cfg, steps=steps, transient=transient)
        report = classify_regime(traj, tol_fp=tol_fp, window=window, coordinate=coordinate)
    except DomainViolationError as exc:
        return BetaSample(float(beta), np.empty(0), "error", error=str(exc))
    return BetaSample(float(beta), report.tail_extrema, report.regime, report.period)


def beta_sweep(
    p0: SimplexState,
    cfg_template: DelayConfig,
    betas: Sequence[float],
    steps: int = DEFAULT_STEPS,
    transient: int = DEFAULT_TRANSIENT,
    coordinate: int = 0,
    tol_fp: float = DEFAULT_TOL_FP,
    window: int = DEFAULT_WINDOW,
    workers: int = 1,
) -> list[BetaSample]:
    """Bifurcation-diagram sweep: per beta, the post-transient extrema of
    one coordinate plus the regime label, ordered by beta.

    Every sample is an independent deterministic simulation; with
    ``workers`` > 1 they run in a process pool, assembled in input order
    either way.
    """
    jobs = [
        (p0, cfg_template, float(b), steps, transient, coordinate, tol_fp, window)
        for b in betas
    ]
    if workers > 1 and len(jobs) > 1:
        with multiprocessing.Pool(processes=workers) as pool:
            return list(pool.map(_sweep_one, jobs))
    return [_sweep_one(job) for job in jobs]
