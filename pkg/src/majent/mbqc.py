"""Resource criteria for measurement-based quantum computation.

The Dicke family with a fixed excitation number k has linear
entanglement approaching ``1 - k^k / (e^k k!)`` as the qubit count
grows.  An approximate-universality argument requires the linear
entanglement to exceed ``1 - 4 eta^(1/3) + 3.4 eta^(2/3)`` for the
approximation parameter eta; since the family's asymptote falls short
of 1, every family member fails the condition below a threshold eta*,
ruling the family out as an approximate universal resource in that
regime.  The threshold is found by bisection and reported next to the
rough closed-form estimate 0.001 * k^(-3/2).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import exp, factorial, lgamma, log

__all__ = [
    "MbqcReport",
    "dicke_family_asymptotic",
    "universality_condition",
    "eta_threshold",
]


@dataclass(frozen=True)
class MbqcReport:
    """Threshold report for a fixed-excitation Dicke family.

    ``eta_threshold`` is the exact bisection root below which the
    universality condition fails; ``paper_threshold`` is the rough
    estimate ``0.001 * k^(-3/2)`` it is compared against.  ``ruled_out``
    records whether the family already fails at that rough estimate.
    """

    k: int
    eg_linear_asymptotic: float
    eta_threshold: float
    paper_threshold: float
    ruled_out: bool


def dicke_family_asymptotic(k: int) -> float:
    """Limiting linear entanglement ``1 - k^k/(e^k k!)`` of the family.

    Evaluated directly for small k and in log space beyond k = 20,
    where the factors overflow individually.
    """
    if k < 1:
        raise ValueError(f"excitation number must be >= 1, got {k}")
    if k <= 20:
        return 1.0 - k**k / (exp(k) * factorial(k))
    return 1.0 - exp(k * log(k) - k - lgamma(k + 1))


def universality_condition(eg_linear: float, eta: float) -> bool:
    """Necessary condition for an eta-approximate universal resource.

    True iff ``eg_linear > 1 - 4 eta^(1/3) + 3.4 eta^(2/3)`` holds
    strictly.  States failing the condition cannot serve as approximate
    universal resources at that eta.
    """
    if not 0.0 <= eg_linear <= 1.0:
        raise ValueError(f"eg_linear must lie in [0, 1], got {eg_linear}")
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must lie in [0, 1], got {eta}")
    x = eta ** (1.0 / 3.0)
    return eg_linear > 1.0 - 4.0 * x + 3.4 * x * x


def eta_threshold(k: int, tol: float = 1e-12) -> MbqcReport:
    """Exact failure threshold eta* for the k-excitation Dicke family.

    Solves ``1 - 4 x + 3.4 x^2 = E`` for the smallest root in x =
    eta^(1/3) by bisection (the left side decreases from 1 on the
    relevant branch, so the bracket (0, 10/17) contains exactly one
    root), then reports eta* = x^3 against 0.001 * k^(-3/2).
    """
    e_inf = dicke_family_asymptotic(k)

    def shortfall(x: float) -> float:
        return (1.0 - 4.0 * x + 3.4 * x * x) - e_inf

    lo, hi = 0.0, 4.0 / 6.8  # vertex of the parabola: left branch is monotone
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if shortfall(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol:
            break
    x_root = 0.5 * (lo + hi)
    eta_star = x_root**3
    paper = 0.001 * k ** (-1.5)
    return MbqcReport(
        k=k,
        eg_linear_asymptotic=e_inf,
        eta_threshold=eta_star,
        paper_threshold=paper,
        ruled_out=not universality_condition(e_inf, paper),
    )
