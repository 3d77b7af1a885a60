"""The bidirectional map between Dicke coefficients and Majorana points.

A symmetric n-qubit state is, up to global phase, the symmetrized
product of ``n`` single-qubit states; the Bloch directions of those
qubits are the state's Majorana points (MPs).  Writing the coherent
state ``|lambda(theta, phi)> = (cos(theta/2)|0> + e^{i phi}
sin(theta/2)|1>)^{(x) n}``, the amplitude function

    f(theta, phi) = |<lambda(theta, phi)|psi>|

factorizes as ``cos^n(theta/2) |sum_k c_k z^k|`` with ``c_k = a_k
sqrt(C(n,k))`` and ``z = e^{-i phi} tan(theta/2)``.  The MPs are the
antipodes of the zeros of f, i.e. of the roots of the coefficient
polynomial (roots lost to a degree drop sit at the south pole, so each
missing degree contributes a north-pole MP).  The closest product
points are the global maxima of f; they are found in
:mod:`majent.cpp_solver`.

The stereographic convention above is internal: only the round-trip and
zero-correspondence properties are part of the public contract.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, lgamma

import numpy as np
from scipy.special import xlogy

from .states import BlochPoint, SymmetricState, normalize

__all__ = [
    "MajoranaPoints",
    "MajoranaPolynomial",
    "majorana_polynomial",
    "state_to_points",
    "points_to_state",
    "amplitude",
    "amplitude_grid",
    "overlap_product",
    "normalization_K",
    "integrate_amplitude_sq",
]

#: Relative magnitude below which a leading coefficient is treated as an
#: exact zero when determining the polynomial degree.
_DEGREE_TOL = 1e-13


@dataclass(frozen=True)
class MajoranaPoints:
    """Exactly ``n`` Bloch points (with multiplicity) encoding a state."""

    n: int
    points: tuple[BlochPoint, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need n >= 1, got n={self.n}")
        pts = tuple(self.points)
        if len(pts) != self.n:
            raise ValueError(f"need exactly n={self.n} points, got {len(pts)}")
        object.__setattr__(self, "points", pts)

    def unit_vectors(self) -> np.ndarray:
        """(n, 3) array of Cartesian unit vectors."""
        return np.array([p.unit_vector() for p in self.points])


@dataclass(frozen=True)
class MajoranaPolynomial:
    """Coefficients ``c_k = a_k sqrt(C(n,k))`` of the amplitude polynomial."""

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.coeffs, dtype=complex).copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def to_state(self) -> SymmetricState:
        """Recover the source state, ``a_k = c_k / sqrt(C(n,k))``."""
        return SymmetricState(self.n, self.coeffs / _root_binom(self.n))


def _root_binom(n: int) -> np.ndarray:
    """sqrt(C(n, k)) for k = 0..n, exact for all n of interest."""
    return np.sqrt([comb(n, k) for k in range(n + 1)])


def _log_binom(n: int, k: np.ndarray) -> np.ndarray:
    kk = np.asarray(k, dtype=float)
    return (
        lgamma(n + 1)
        - np.array([lgamma(x + 1) for x in kk])
        - np.array([lgamma(n - x + 1) for x in kk])
    )


def majorana_polynomial(state: SymmetricState) -> MajoranaPolynomial:
    """Binomially weighted coefficient vector of the amplitude function."""
    return MajoranaPolynomial(state.amps * _root_binom(state.n))


def _polynomial_degree(c: np.ndarray) -> int:
    mags = np.abs(c)
    top = mags.max()
    if top == 0.0:
        raise ValueError("zero state has no Majorana representation")
    nz = np.flatnonzero(mags > _DEGREE_TOL * top)
    return int(nz[-1])


def state_to_points(state: SymmetricState) -> MajoranaPoints:
    """Majorana points of a state: antipodes of the amplitude zeros.

    The ``deg`` finite roots of ``sum_k c_k z^k`` are computed as
    companion-matrix eigenvalues and polished with one Newton step each;
    a root ``zeta = e^{-i phi_z} tan(theta_z / 2)`` marks a zero of f at
    ``(theta_z, phi_z)`` whose antipode ``(pi - theta_z, phi_z + pi)``
    is an MP.  The remaining ``n - deg`` zeros sit at the south pole
    (roots at infinity), contributing north-pole MPs.

    Returns
    -------
    MajoranaPoints
        The n points sorted by (theta, phi) for deterministic output.
    """
    n = state.n
    c = majorana_polynomial(state).coeffs
    deg = _polynomial_degree(c)
    points = [BlochPoint(0.0, 0.0)] * (n - deg)
    if deg > 0:
        cut = c[: deg + 1]
        # np.roots degrades to float64 when every root is a stripped zero
        roots = np.roots(cut[::-1]).astype(complex)
        # one Newton polish per root against the full-degree polynomial
        dc = cut[1:] * np.arange(1, deg + 1)
        p = np.polyval(cut[::-1], roots)
        dp = np.polyval(dc[::-1], roots)
        ok = dp != 0.0
        roots[ok] = roots[ok] - p[ok] / dp[ok]
        theta_z = 2.0 * np.arctan(np.abs(roots))
        phi_z = (-np.angle(roots)) % (2 * np.pi)
        for tz, pz in zip(theta_z, phi_z):
            points.append(BlochPoint(np.pi - tz, pz + np.pi))
    points.sort(key=lambda p: (p.theta, p.phi))
    return MajoranaPoints(n, tuple(points))


def _product_coefficients(points: MajoranaPoints) -> np.ndarray:
    """Coefficients c_k of prod_i (alpha_i + beta_i z) for unit spinors."""
    c = np.array([1.0 + 0.0j])
    for p in points.points:
        alpha = np.cos(p.theta / 2.0)
        beta = np.exp(1j * p.phi) * np.sin(p.theta / 2.0)
        c = np.convolve(c, np.array([alpha, beta]))
    return c


def points_to_state(points: MajoranaPoints) -> SymmetricState:
    """Symmetrize a product of single-qubit states; inverse of the point map.

    Builds the polynomial with z-roots at the antipodes of the given
    points as the product of linear factors ``prod_i (alpha_i + beta_i
    z)`` — pole multiplicities emerge as a degree drop, with no special
    casing — then divides out the binomial weights and normalizes.
    """
    c = _product_coefficients(points)
    return normalize(MajoranaPolynomial(c).to_state())


def amplitude(state: SymmetricState, sigma: BlochPoint) -> float:
    """The amplitude function ``f(theta, phi) = |<lambda(sigma)|psi>|``.

    Evaluated as a log-magnitude term sum, which neither overflows nor
    loses the poles for any qubit count of interest (the ``0 * log 0``
    cases at the poles are exact zeros).  Values lie in ``[0, 1]`` for
    normalized input.
    """
    return float(amplitude_grid(state, np.array([sigma.theta]), np.array([sigma.phi]))[0, 0])


def amplitude_grid(
    state: SymmetricState, thetas: np.ndarray, phis: np.ndarray
) -> np.ndarray:
    """f on the outer product grid of ``thetas`` x ``phis``.

    Returns an array of shape ``(len(thetas), len(phis))``; grid
    evaluation is a single vectorized pass, row-major in theta then phi.
    """
    n = state.n
    k = np.arange(n + 1)
    th = np.asarray(thetas, dtype=float)[:, None]
    log_mag = (
        0.5 * _log_binom(n, k)[None, :]
        + xlogy(n - k, np.abs(np.cos(th / 2.0)))
        + xlogy(k, np.abs(np.sin(th / 2.0)))
    )
    base = state.amps[None, :] * np.exp(log_mag)  # (T, n+1)
    phase = np.exp(-1j * np.outer(np.asarray(phis, dtype=float), k))  # (P, n+1)
    return np.abs(np.einsum("tk,pk->tp", base, phase))


def normalization_K(points: MajoranaPoints) -> float:
    """Normalization constant of the permanent-style expansion.

    ``K = (n!)^2 ||a_unnorm||^2`` where ``a_unnorm`` is the unnormalized
    Dicke coefficient vector produced inside :func:`points_to_state`,
    i.e. ``K = (n!)^2 sum_k |c_k|^2 / C(n, k)``.
    """
    n = points.n
    c = _product_coefficients(points)
    binom = np.array([comb(n, k) for k in range(n + 1)], dtype=float)
    norm_sq = float(np.sum(np.abs(c) ** 2 / binom))
    log_k = 2.0 * lgamma(n + 1) + np.log(norm_sq)
    return float(np.exp(log_k))


def overlap_product(points: MajoranaPoints, K: float, sigma: BlochPoint) -> float:
    """Amplitude via the product form ``n! K^{-1/2} prod_i |<sigma|phi_i>|``.

    Agrees with ``amplitude(points_to_state(points), sigma)`` to 1e-9;
    the product of single-qubit overlaps is accumulated in log space so
    large n cannot overflow the ``n!`` prefactor.
    """
    if K <= 0.0:
        raise ValueError(f"normalization K must be positive, got {K}")
    n = points.n
    ct, st = np.cos(sigma.theta / 2.0), np.sin(sigma.theta / 2.0)
    log_sum = 0.0
    for p in points.points:
        ov = ct * np.cos(p.theta / 2.0) + st * np.sin(p.theta / 2.0) * np.exp(
            1j * (p.phi - sigma.phi)
        )
        mag = abs(ov)
        if mag == 0.0:
            return 0.0
        log_sum += np.log(mag)
    return float(np.exp(lgamma(n + 1) - 0.5 * np.log(K) + log_sum))


def integrate_amplitude_sq(
    state: SymmetricState,
    n_theta: int | None = None,
    n_phi: int | None = None,
) -> float:
    """Sphere integral of f^2 with the measure ``sin(theta) dtheta dphi``.

    Product quadrature: Gauss-Legendre in ``cos(theta)`` crossed with a
    uniform trapezoid in ``phi``.  The integrand is a trigonometric
    polynomial of degree 2n in theta and n in phi, so the defaults
    ``(4(n+1), 8(n+1))`` integrate it exactly with a factor-two margin;
    the result equals ``4 pi / (n + 1)`` for every normalized state.
    """
    n = state.n
    if n_theta is None:
        n_theta = 4 * (n + 1)
    if n_phi is None:
        n_phi = 8 * (n + 1)
    if n_theta < 2 or n_phi < 2:
        raise ValueError(f"quadrature orders must be >= 2, got ({n_theta}, {n_phi})")
    nodes, weights = np.polynomial.legendre.leggauss(n_theta)
    thetas = np.arccos(nodes)
    phis = 2 * np.pi * np.arange(n_phi) / n_phi
    f = amplitude_grid(state, thetas, phis)
    # fixed-order reduction: phi average first, then weighted theta sum
    phi_mean = np.sum(f * f, axis=1) * (2 * np.pi / n_phi)
    return float(np.dot(weights, phi_mean))
