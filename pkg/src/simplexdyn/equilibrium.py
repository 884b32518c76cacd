"""Analytic fixed points: closed forms and the active-set algorithm.

Every limit state has the form p_i = 1 - Lambda(M*)/c_i on an active set
M* and 0 elsewhere, where Lambda(M*) = (gamma(M*) - 1) / sum_{k in M*} 1/c_k
is the self-consistent survival threshold: a component keeps a positive
share exactly when its favorability exceeds the threshold of the surviving
set.  The general solver refines a candidate set until it stabilizes;
closed forms for the uniform map, n=2 and n=3 are provided separately and
agree with the general route.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import ActiveSet, DimensionError, Favorability, MeanField, SimplexState, mean_field
from .dynamics import apply_map

# Indices whose favorability sits within this relative distance of the
# threshold are flagged "critical" in the report instead of being silently
# classified: exactly-at-threshold is the bifurcation point under study.
CRITICAL_GUARD = 1e-12


@dataclass(frozen=True)
class FixedPointReport:
    """Limit state together with its active-set description.

    For i in the active set, p_i = 1 - lambda_value/c_i > 0; all other
    coordinates are exactly zero.  ``residual`` is the sup-norm of one map
    application minus the point itself.  ``critical_indices`` lists
    components whose favorability is within the relative guard of the
    threshold (transcritical borderline), classification notwithstanding.
    """

    p_inf: SimplexState
    r_inf: MeanField
    active_set: ActiveSet
    lambda_value: float
    residual: float
    critical_indices: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.p_inf.n

    def zero_set(self) -> tuple[int, ...]:
        return self.active_set.complement(self.n)


def lambda_threshold(members: ActiveSet, fav: Favorability) -> float:
    """Survival threshold Lambda(M) = (gamma(M) - 1)/sum_{k in M} 1/c_k.

    Zero for singleton sets (a lone survivor takes the whole share).
    """
    if members.gamma == 0:
        raise ValueError("threshold of an empty set is undefined")
    if any(i >= fav.n for i in members.indices):
        raise DimensionError(f"active-set indices {members.indices} out of range for n={fav.n}")
    if members.gamma == 1:
        return 0.0
    inv = 1.0 / fav.c[list(members.indices)]
    return (members.gamma - 1) / float(inv.sum())


def limit_coordinate(fav: Favorability, members: ActiveSet, i: int) -> float:
    """Limit share of an active component, 1 - Lambda(M)/c_i."""
    if i not in members.indices:
        raise ValueError(f"index {i} is not in the active set {members.indices}")
    lam = lambda_threshold(members, fav)
    if fav.c[i] <= lam:
        raise ValueError(f"component {i} is not active: c={fav.c[i]} <= threshold {lam}")
    return 1.0 - lam / float(fav.c[i])


def _report_for_active(
    fav: Favorability,
    active: tuple[int, ...],
    critical: tuple[int, ...] = (),
) -> FixedPointReport:
    members = ActiveSet(active)
    lam = lambda_threshold(members, fav)
    p = np.zeros(fav.n)
    idx = list(members.indices)
    p[idx] = 1.0 - lam / fav.c[idx]
    state = SimplexState(p)
    residual = float(np.max(np.abs(apply_map(state.p, fav.c) - state.p)))
    return FixedPointReport(
        p_inf=state,
        r_inf=mean_field(state),
        active_set=members,
        lambda_value=lam,
        residual=residual,
        critical_indices=critical,
    )


def fixed_point_for_support(fav: Favorability, support: tuple[int, ...]) -> FixedPointReport:
    """Equilibrium reached from initial conditions supported on ``support``.

    Runs the active-set refinement restricted to the given indices.
    """
    if len(support) == 0:
        raise ValueError("support must be nonempty")
    candidate = tuple(sorted(set(int(i) for i in support)))
    if candidate[-1] >= fav.n:
        raise DimensionError(f"support {candidate} out of range for n={fav.n}")

    # The candidate set only ever shrinks, so this terminates in at most
    # n refinement passes.
    while True:
        lam = lambda_threshold(ActiveSet(candidate), fav)
        kept = tuple(k for k in candidate if fav.c[k] > lam)
        if kept == candidate:
            break
        candidate = kept

    lam = lambda_threshold(ActiveSet(candidate), fav)
    critical = tuple(
        k for k in sorted(set(int(i) for i in support))
        if abs(fav.c[k] - lam) <= CRITICAL_GUARD * max(abs(fav.c[k]), abs(lam), 1.0)
    )
    return _report_for_active(fav, candidate, critical)


def find_fixed_point(p0: SimplexState, fav: Favorability) -> FixedPointReport:
    """Analytic limit state for an initial condition and favorability set.

    Components starting at zero never participate (zero coordinates are
    invariant), so the initial active candidates are the support of p0;
    the candidate set is then refined by the threshold condition
    c_k > Lambda(M) until it stabilizes.
    """
    if fav.n != p0.n:
        raise DimensionError(f"dimension mismatch: state n={p0.n}, favorability n={fav.n}")
    return fixed_point_for_support(fav, p0.support())


def uniform_limit(p0: SimplexState) -> FixedPointReport:
    """Limit state of the uniform map: equal shares on the support of p0.

    With m zero coordinates the survivors each end at 1/(n - m); the mean
    field splits into 1/(n-1) on the zero set and (n-m-1)/((n-1)(n-m)) on
    the support.  Equivalent to the threshold route at c = 1.
    """
    support = p0.support()
    fav = Favorability(np.ones(p0.n))
    return _report_for_active(fav, support)


def fixed_point_n2(fav: Favorability) -> FixedPointReport:
    """Closed-form n=2 equilibrium, p = (c1, c2)/(c1 + c2)."""
    if fav.n != 2:
        raise DimensionError(f"closed form requires n=2, got n={fav.n}")
    c1, c2 = float(fav.c[0]), float(fav.c[1])
    state = SimplexState(np.array([c1 / (c1 + c2), c2 / (c1 + c2)]))
    lam = lambda_threshold(ActiveSet((0, 1)), fav)
    residual = float(np.max(np.abs(apply_map(state.p, fav.c) - state.p)))
    return FixedPointReport(
        p_inf=state,
        r_inf=mean_field(state),
        active_set=ActiveSet((0, 1)),
        lambda_value=lam,
        residual=residual,
    )


def pairwise_condition_n3(fav: Favorability) -> bool:
    """True when every c_i exceeds c_j c_k/(c_j + c_k) for the other two."""
    c = fav.c
    for i in range(3):
        j, k = [m for m in range(3) if m != i]
        if not c[i] > c[j] * c[k] / (c[j] + c[k]):
            return False
    return True


def fixed_point_n3(fav: Favorability) -> FixedPointReport:
    """Closed-form n=3 equilibrium.

    If each favorability beats the harmonic combination of the other two,
    all three shares survive and

        p_i = (c_i c_j + c_i c_k - c_j c_k)/(c1 c2 + c1 c3 + c2 c3).

    Otherwise the violating component dies out and the general active-set
    route supplies the boundary equilibrium.
    """
    if fav.n != 3:
        raise DimensionError(f"closed form requires n=3, got n={fav.n}")
    if not pairwise_condition_n3(fav):
        return find_fixed_point(SimplexState.uniform(3), fav)
    c1, c2, c3 = (float(x) for x in fav.c)
    den = c1 * c2 + c1 * c3 + c2 * c3
    p = np.array([
        (c1 * c2 + c1 * c3 - c2 * c3) / den,
        (c1 * c2 - c1 * c3 + c2 * c3) / den,
        (c1 * c3 - c1 * c2 + c2 * c3) / den,
    ])
    state = SimplexState(p)
    lam = lambda_threshold(ActiveSet((0, 1, 2)), fav)
    residual = float(np.max(np.abs(apply_map(state.p, fav.c) - state.p)))
    return FixedPointReport(
        p_inf=state,
        r_inf=mean_field(state),
        active_set=ActiveSet((0, 1, 2)),
        lambda_value=lam,
        residual=residual,
    )
