"""Shared samplers and hypothesis strategies for the test suite."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from simplexdyn import Favorability, SimplexState


def random_simplex(rng: np.random.Generator, n: int, zeros: int = 0) -> np.ndarray:
    """A random stochastic vector, optionally with exact zeros."""
    p = rng.dirichlet(np.ones(n - zeros))
    if zeros == 0:
        return p
    full = np.zeros(n)
    keep = rng.choice(n, size=n - zeros, replace=False)
    full[np.sort(keep)] = p
    return full


def random_interior(rng: np.random.Generator, n: int, floor: float = 1e-3) -> np.ndarray:
    """Interior point with every coordinate at least ``floor``."""
    while True:
        p = rng.dirichlet(np.ones(n))
        if p.min() >= floor:
            return p


@st.composite
def simplex_arrays(draw, min_n: int = 2, max_n: int = 8, allow_zero: bool = False):
    n = draw(st.integers(min_n, max_n))
    low = 0.0 if allow_zero else 1e-6
    raw = draw(
        st.lists(st.floats(low, 1.0, allow_nan=False, allow_infinity=False),
                 min_size=n, max_size=n)
    )
    arr = np.asarray(raw)
    total = arr.sum()
    if total <= 0:
        arr = np.ones(n)
        total = float(n)
    return arr / total


@st.composite
def simplex_states(draw, min_n: int = 2, max_n: int = 8, allow_zero: bool = False):
    return SimplexState(draw(simplex_arrays(min_n, max_n, allow_zero)))


@st.composite
def favorability_arrays(draw, n: int, low: float = 0.05, high: float = 1.0):
    raw = draw(
        st.lists(st.floats(low, high, allow_nan=False, allow_infinity=False),
                 min_size=n, max_size=n)
    )
    return np.asarray(raw)


@st.composite
def state_with_favorability(draw, min_n: int = 2, max_n: int = 8, allow_zero: bool = False):
    state = draw(simplex_states(min_n, max_n, allow_zero))
    fav = Favorability(draw(favorability_arrays(state.n)))
    return state, fav
