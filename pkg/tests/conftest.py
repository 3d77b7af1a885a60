"""Shared helpers for the test suite."""
from __future__ import annotations

import numpy as np

from majent.states import SymmetricState, normalize


def random_state(n: int, rng: np.random.Generator, mode: str = "general") -> SymmetricState:
    """Normalized random state with coefficients drawn per ``mode``."""
    if mode == "positive":
        amps = np.abs(rng.standard_normal(n + 1))
    elif mode == "real":
        amps = rng.standard_normal(n + 1)
    else:
        amps = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    return normalize(SymmetricState(n, amps.astype(complex)))
