"""Closed forms, bounds, moment diagnostics, and duality reports.

Everything here is either exact arithmetic (Dicke entanglement, bound
formulas) or a thin diagnostic layered on the solver and the point map:
the mean-spin / second-moment tests used to probe anticoherence and
low-order spherical-design structure, and the Hausdorff comparison of
one state's Majorana points against another's closest product points.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lgamma, log2

import numpy as np

from .cpp_solver import CPPSet, SolverConfig, find_cpps
from .majorana import MajoranaPoints, state_to_points
from .states import BlochPoint, SymmetricState

__all__ = [
    "BoundsReport",
    "MomentReport",
    "DualityReport",
    "dicke_cpp",
    "dicke_entanglement",
    "entanglement_bounds",
    "moment_report",
    "hausdorff_angle",
    "duality_report",
]

_DUAL_TOL = 1e-5


@dataclass(frozen=True)
class BoundsReport:
    """Lower and upper bounds on the maximal geometric entanglement.

    ``dicke_lower`` is the best balanced-Dicke value (a feasible point,
    hence a lower bound), ``stirling_lower = log2 sqrt(n pi / 2)`` its
    asymptotic form, and ``upper = log2(n + 1)`` the symmetric-state
    ceiling.  ``general_lower``/``general_upper`` are the coarse bounds
    n/2 and n - 1 that hold for arbitrary (non-symmetric) states.
    """

    n: int
    dicke_lower: float
    stirling_lower: float
    upper: float
    general_lower: float
    general_upper: float


@dataclass(frozen=True)
class MomentReport:
    """First and second moments of a Majorana point configuration.

    ``spin_vector`` is the mean of the unit vectors; a vanishing mean is
    order-1 anticoherence.  ``second_moment_deviation`` is the operator
    norm of ``M - I/3`` with ``M`` the mean outer product; zero means
    the configuration is also a 2-design candidate.
    """

    spin_vector: tuple[float, float, float]
    second_moment_deviation: float

    def is_anticoherent(self, tol: float = 1e-9) -> bool:
        return float(np.linalg.norm(self.spin_vector)) < tol

    def is_design(self, t: int, tol: float = 1e-9) -> bool:
        """Moment test for spherical t-designs, implemented for t <= 2."""
        if t not in (1, 2):
            raise ValueError(f"design check implemented for t in {{1, 2}}, got {t}")
        if t == 1:
            return self.is_anticoherent(tol)
        return self.is_anticoherent(tol) and self.second_moment_deviation < tol


@dataclass(frozen=True)
class DualityReport:
    """Hausdorff comparison between two states' MP and CPP sets.

    ``mp_a_vs_cpp_b`` is the Hausdorff angular distance between the
    Majorana points of the first state and the closest product points of
    the second; ``cpp_a_vs_mp_b`` the converse.  The pair is dual when
    both distances vanish (below 1e-5).
    """

    mp_a_vs_cpp_b: float
    cpp_a_vs_mp_b: float

    @property
    def is_dual_pair(self) -> bool:
        return self.mp_a_vs_cpp_b < _DUAL_TOL and self.cpp_a_vs_mp_b < _DUAL_TOL


def dicke_cpp(n: int, k: int) -> BlochPoint:
    """Closest product point of the Dicke state with k excitations.

    The maximizing product state has ``cos(theta/2) = sqrt((n-k)/n)``
    on the phi = 0 meridian; every azimuth works equally well (the
    maxima form a ring for 0 < k < n), so the meridian representative is
    returned.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return BlochPoint(theta=2.0 * np.arccos(np.sqrt((n - k) / n)), phi=0.0)


def dicke_entanglement(n: int, k: int) -> float:
    """Exact geometric entanglement of a Dicke state.

    ``E_g = log2((n/k)^k (n/(n-k))^(n-k) / binom(n, k))``, evaluated in
    log space; the k = 0 and k = n endpoints are product states with
    E_g = 0.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if k == 0 or k == n:
        return 0.0
    ln = np.log
    log_binom = lgamma(n + 1) - lgamma(k + 1) - lgamma(n - k + 1)
    val = k * ln(n / k) + (n - k) * ln(n / (n - k)) - log_binom
    return float(val / ln(2.0))


def entanglement_bounds(n: int) -> BoundsReport:
    """Bound report for the maximal entanglement at a given qubit count."""
    if n < 2:
        raise ValueError(f"bounds require n >= 2, got {n}")
    return BoundsReport(
        n=n,
        dicke_lower=dicke_entanglement(n, n // 2),
        stirling_lower=0.5 * log2(n * np.pi / 2.0),
        upper=log2(n + 1),
        general_lower=n / 2.0,
        general_upper=float(n - 1),
    )


def moment_report(points: MajoranaPoints) -> MomentReport:
    """Mean spin vector and second-moment isotropy deviation of a point set."""
    v = points.unit_vectors()
    spin = v.mean(axis=0)
    second = (v[:, :, None] * v[:, None, :]).mean(axis=0)
    deviation = float(np.linalg.norm(second - np.eye(3) / 3.0, ord=2))
    return MomentReport(
        spin_vector=(float(spin[0]), float(spin[1]), float(spin[2])),
        second_moment_deviation=deviation,
    )


def hausdorff_angle(a: np.ndarray, b: np.ndarray) -> float:
    """Hausdorff distance between two unit-vector sets, in radians.

    Angles come from ``2 atan2(|u - v|, |u + v|)``, which stays fully
    accurate at both ends of [0, pi]; the arccos form loses half its
    digits exactly where matching sets should report zero.
    """
    diff = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)
    summ = np.linalg.norm(a[:, None, :] + b[None, :, :], axis=2)
    ang = 2.0 * np.arctan2(diff, summ)
    return float(max(ang.min(axis=1).max(), ang.min(axis=0).max()))


def _cpp_vectors(cppset: CPPSet) -> np.ndarray:
    return np.array([p.unit_vector() for p in cppset.cpps])


def duality_report(
    a: SymmetricState, b: SymmetricState, config: SolverConfig | None = None
) -> DualityReport:
    """Compare MPs of each state against CPPs of the other.

    Two states form a dual pair when interchanging Majorana points and
    closest product points maps one onto the other; a state is self-dual
    when called with itself and the distances vanish.
    """
    if config is None:
        config = SolverConfig()
    mp_a = state_to_points(a).unit_vectors()
    mp_b = state_to_points(b).unit_vectors()
    cpp_a = _cpp_vectors(find_cpps(a, config))
    cpp_b = _cpp_vectors(find_cpps(b, config))
    return DualityReport(
        mp_a_vs_cpp_b=hausdorff_angle(mp_a, cpp_b),
        cpp_a_vs_mp_b=hausdorff_angle(cpp_a, mp_b),
    )
