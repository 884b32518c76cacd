"""Transcritical thresholds, parameter-region classification and scans.

A component's limit share switches between zero and positive exactly when
its favorability crosses the survival threshold of the remaining set; in
parameter space these crossings are transcritical bifurcation hypersurfaces.
This module provides the codimension-one critical value, the four-region
codimension-two classifier, the general classifier backed by the
equilibrium solver, and 1-D/2-D scan generators with bisection refinement
of detected thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DimensionError, Favorability, SimplexState
from .equilibrium import find_fixed_point
from .stability import classify

# Points within this relative distance of a region boundary are labeled
# with the zero side plus a "critical" flag, mirroring the strict-inequality
# convention of the equilibrium module.
BOUNDARY_GUARD = 1e-12

# Bisection tolerance for refined critical parameter values.
REFINE_TOL = 1e-10


@dataclass(frozen=True)
class RegionLabel:
    """Which components vanish in the limit for a parameter point.

    ``zero_set`` can never be all indices: the unit sum is conserved, so
    at most n-1 components can collapse simultaneously.
    """

    zero_set: tuple[int, ...]
    description: str
    critical: bool = False

    def __post_init__(self):
        object.__setattr__(self, "zero_set", tuple(sorted(set(self.zero_set))))


@dataclass(frozen=True)
class CriticalValue:
    """A codimension-one threshold plus a precondition check.

    ``precondition_ok`` reports whether the fixed components satisfy the
    sub-simplex stability condition; the formula value is returned either
    way (with the flag as the warning).
    """

    value: float
    precondition_ok: bool


def critical_value(i: int, c_others: np.ndarray) -> CriticalValue:
    """Threshold for component i given the other favorabilities.

    Below (n-2)/sum_j 1/c_j the component's limit share is zero; above it
    the share is positive.  The value equals the survival threshold of the
    complementary set, so at the threshold Lambda({others}) = c_crit.
    """
    others = np.asarray(c_others, dtype=float)
    n = others.size + 1
    if n < 3:
        raise DimensionError(f"critical value needs n >= 3, got n={n}")
    if np.any(others <= 0.0) or not np.all(np.isfinite(others)):
        raise ValueError(f"other favorabilities must be positive finite, got {others}")
    inv = 1.0 / others
    value = (n - 2) / float(inv.sum())

    # The formula describes a clean exchange of stability only when the
    # complementary subsystem keeps every share positive at the boundary,
    # i.e. when all the other constants clear the subsystem threshold
    # (which equals the value itself).
    ok = bool(np.all(others > value))
    return CriticalValue(value=value, precondition_ok=ok)


def _near(a: float, b: float) -> bool:
    return abs(a - b) <= BOUNDARY_GUARD * max(abs(a), abs(b), 1.0)


def classify_codim2(c1: float, c2: float, c_rest: np.ndarray) -> RegionLabel:
    """Four-region classification in the (c1, c2) parameter plane.

    With the remaining favorabilities fixed, the plane splits along the
    curves
        Gamma1: c1 (1/c2 + S) = n - 2,   Gamma2: c2 (1/c1 + S) = n - 2,
    S = sum over the rest of 1/c_k, into: both components surviving,
    component 1 collapsed, component 2 collapsed, and both collapsed
    (the latter exactly when both c's sit at or below (n-3)/S).  Points on
    a boundary curve get the adjacent zero-side label with ``critical``.
    """
    rest = np.asarray(c_rest, dtype=float)
    n = rest.size + 2
    if n < 4:
        raise DimensionError(f"codimension-two classification needs n >= 4, got n={n}")
    if c1 <= 0 or c2 <= 0 or np.any(rest <= 0.0):
        raise ValueError("favorabilities must be positive")
    s = float(np.sum(1.0 / rest))
    for k in range(rest.size):
        if not rest[k] > (n - 3) / s:
            raise ValueError(
                f"fixed components must satisfy the sub-simplex condition; "
                f"c_rest[{k}]={rest[k]} <= {(n - 3) / s}"
            )

    g1 = c1 * (1.0 / c2 + s)  # vs n-2, Gamma1
    g2 = c2 * (1.0 / c1 + s)  # vs n-2, Gamma2
    t1 = c1 * s               # vs n-3
    t2 = c2 * s               # vs n-3
    on_g1 = _near(g1, n - 2.0)
    on_g2 = _near(g2, n - 2.0)
    on_t1 = _near(t1, n - 3.0)
    on_t2 = _near(t2, n - 3.0)
    critical = on_g1 or on_g2 or on_t1 or on_t2

    if (t1 <= n - 3.0 or on_t1) and (t2 <= n - 3.0 or on_t2):
        return RegionLabel((0, 1), "components 1 and 2 collapse", critical)
    if g1 < n - 2.0 or on_g1:
        return RegionLabel((0,), "component 1 collapses", critical)
    if g2 < n - 2.0 or on_g2:
        return RegionLabel((1,), "component 2 collapses", critical)
    return RegionLabel((), "all components persist", critical)


def classify_codimk(fav: Favorability) -> RegionLabel:
    """General region label: the collapsed set from an interior start.

    Delegates to the equilibrium solver and checks the self-consistency
    inequalities of the resulting split (c_i at or below the threshold of
    the surviving set for every collapsed i).
    """
    report = find_fixed_point(SimplexState.uniform(fav.n), fav)
    zero = report.zero_set()
    lam = report.lambda_value
    for i in zero:
        if fav.c[i] > lam and i not in report.critical_indices:
            raise AssertionError(
                f"inconsistent classification: c[{i}]={fav.c[i]} > threshold {lam}"
            )
    desc = "all components persist" if not zero else (
        "components " + ",".join(str(i + 1) for i in zero) + " collapse"
    )
    return RegionLabel(zero, desc, critical=bool(report.critical_indices))


@dataclass(frozen=True)
class ScanSample:
    """One point of a 1-D parameter scan."""

    c_value: float
    p_inf: np.ndarray
    zero_set: tuple[int, ...]
    verdict: str


@dataclass(frozen=True)
class ScanResult1D:
    """Samples of the limit state along one favorability axis.

    ``critical_values`` holds the bisection-refined parameter values where
    the collapsed set changes between adjacent samples.
    """

    parameter_index: int
    samples: tuple[ScanSample, ...]
    critical_values: tuple[float, ...]


@dataclass(frozen=True)
class ScanResult2D:
    """Region labels over a rectangular favorability grid.

    ``gamma1``/``gamma2`` sample the analytic bifurcation curves inside
    the scanned window as (c_i, c_j) polylines.
    """

    index_i: int
    index_j: int
    values_i: np.ndarray
    values_j: np.ndarray
    labels: tuple[tuple[RegionLabel, ...], ...]
    gamma1: np.ndarray
    gamma2: np.ndarray


def _with_value(c_base: np.ndarray, i: int, value: float) -> Favorability:
    c = np.array(c_base, dtype=float)
    c[i] = value
    return Favorability(c)


def _zero_set_at(c_base: np.ndarray, i: int, value: float) -> tuple[int, ...]:
    report = find_fixed_point(SimplexState.uniform(c_base.size), _with_value(c_base, i, value))
    return report.zero_set()


def _refine_crossing(c_base: np.ndarray, i: int, lo: float, hi: float) -> float:
    """Bisect a zero-set change to REFINE_TOL on the analytic fixed point."""
    zs_lo = _zero_set_at(c_base, i, lo)
    while hi - lo > REFINE_TOL:
        mid = 0.5 * (lo + hi)
        if _zero_set_at(c_base, i, mid) == zs_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def scan_1d(
    i: int,
    lo: float,
    hi: float,
    steps: int,
    c_base: np.ndarray,
    classify_samples: bool = True,
) -> ScanResult1D:
    """Sweep favorability i over [lo, hi] and track the limit state.

    Each sample's equilibrium comes from the analytic solver (simulation
    near a threshold is pathologically slow, the analytic point is exact);
    detected changes of the collapsed set are refined by bisection.
    """
    if not (lo < hi):
        raise ValueError(f"invalid range: lo={lo} must be < hi={hi}")
    if steps < 2:
        raise ValueError(f"need at least 2 steps, got {steps}")
    if lo <= 0:
        raise ValueError(f"favorability range must be positive, got lo={lo}")
    base = np.asarray(c_base, dtype=float)
    if not (0 <= i < base.size):
        raise DimensionError(f"index {i} out of range for n={base.size}")

    values = np.linspace(lo, hi, steps)
    samples = []
    for v in values:
        fav = _with_value(base, i, float(v))
        report = find_fixed_point(SimplexState.uniform(base.size), fav)
        verdict = classify(report, fav).verdict if classify_samples else ""
        samples.append(ScanSample(
            c_value=float(v),
            p_inf=report.p_inf.p,
            zero_set=report.zero_set(),
            verdict=verdict,
        ))

    criticals = []
    for a, b in zip(samples, samples[1:]):
        if a.zero_set != b.zero_set:
            criticals.append(_refine_crossing(base, i, a.c_value, b.c_value))

    return ScanResult1D(
        parameter_index=i,
        samples=tuple(samples),
        critical_values=tuple(criticals),
    )


def _gamma_curve(values: np.ndarray, s: float, n: int, lo: float, hi: float) -> np.ndarray:
    """Points of c_a (1/c_b + S) = n-2 sampled along the c_b axis."""
    pts = []
    for cb in values:
        ca = (n - 2.0) / (1.0 / cb + s)
        if lo <= ca <= hi:
            pts.append((ca, cb))
    return np.array(pts) if pts else np.empty((0, 2))


def scan_2d(
    i: int,
    j: int,
    lo: float,
    hi: float,
    steps: int,
    c_base: np.ndarray,
) -> ScanResult2D:
    """Label a (c_i, c_j) grid by which components collapse.

    Uses the four-region codimension-two classifier when its preconditions
    hold (n >= 4 with admissible fixed components) and the general
    classifier otherwise; cell evaluations are independent and assembled
    in grid order, so the result is deterministic regardless of execution
    order.
    """
    if i == j:
        raise ValueError("scan indices must differ")
    if not (lo < hi) or lo <= 0:
        raise ValueError(f"invalid grid range [{lo}, {hi}]")
    if steps < 2:
        raise ValueError(f"need at least 2 grid steps, got {steps}")
    base = np.asarray(c_base, dtype=float)
    n = base.size
    if not (0 <= i < n and 0 <= j < n):
        raise DimensionError(f"indices ({i}, {j}) out of range for n={n}")

    rest_idx = [k for k in range(n) if k not in (i, j)]
    rest = base[rest_idx]
    s = float(np.sum(1.0 / rest))
    use_codim2 = n >= 4 and bool(np.all(rest > (n - 3) / s))

    values = np.linspace(lo, hi, steps)
    labels = []
    for vi in values:
        row = []
        for vj in values:
            if use_codim2:
                raw = classify_codim2(float(vi), float(vj), rest)
                zero = tuple(sorted((i, j)[k] for k in raw.zero_set))
                row.append(RegionLabel(zero, raw.description, raw.critical))
            else:
                c = np.array(base)
                c[i], c[j] = vi, vj
                row.append(classify_codimk(Favorability(c)))
        labels.append(tuple(row))

    curve = _gamma_curve(values, s, n, lo, hi)
    gamma1 = curve                                            # (c_i, c_j) pairs
    gamma2 = curve[:, ::-1].copy() if curve.size else np.empty((0, 2))

    return ScanResult2D(
        index_i=i,
        index_j=j,
        values_i=values,
        values_j=values,
        labels=tuple(labels),
        gamma1=gamma1,
        gamma2=gamma2,
    )
