"""Symmetric n-qubit states in the Dicke basis.

A permutation-symmetric pure state of ``n`` qubits is stored as the
``n + 1`` complex amplitudes ``a_0 .. a_n`` over the Dicke basis, where
``|S_{n,k}>`` is the equally weighted superposition of all computational
basis states with exactly ``k`` excitations.  This module provides the
value types shared by the rest of the package (states, Bloch directions,
symmetry classifications) together with basis construction, inner
products, joint single-qubit rotations and coefficient-level symmetry
classification.

All types are immutable values and all operations are pure functions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

__all__ = [
    "BlochPoint",
    "SymmetricState",
    "StateClassification",
    "make_dicke",
    "normalize",
    "inner",
    "rotate_state",
    "classify",
]

#: Magnitude below which an amplitude counts as zero for classification.
DEFAULT_SUPPORT_TOL = 1e-10


@dataclass(frozen=True)
class BlochPoint:
    """A direction on the unit sphere, ``theta`` polar, ``phi`` azimuthal.

    Doubles as a single-qubit state ``cos(theta/2)|0> + e^{i phi}
    sin(theta/2)|1>`` and as an optimization variable.  Angles are
    canonicalized on construction: ``theta`` into ``[0, pi]``, ``phi``
    into ``[0, 2*pi)``, and ``phi = 0`` exactly at the poles.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        theta = float(self.theta) % (2 * np.pi)
        phi = float(self.phi)
        if theta > np.pi:
            theta = 2 * np.pi - theta
            phi += np.pi
        phi %= 2 * np.pi
        if theta == 0.0 or theta == np.pi:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    def unit_vector(self) -> np.ndarray:
        """Cartesian unit vector of the direction."""
        st = np.sin(self.theta)
        return np.array(
            [st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)]
        )

    def antipode(self) -> "BlochPoint":
        """The diametrically opposite point."""
        return BlochPoint(np.pi - self.theta, self.phi + np.pi)

    def angle_to(self, other: "BlochPoint") -> float:
        """Geodesic (angular) distance to ``other`` in radians."""
        u, v = self.unit_vector(), other.unit_vector()
        # atan2 keeps full precision near 0 and pi, where arccos loses half
        return float(np.arctan2(np.linalg.norm(np.cross(u, v)), np.dot(u, v)))


@dataclass(frozen=True)
class SymmetricState:
    """A symmetric ``n``-qubit state as Dicke amplitudes ``a_0 .. a_n``.

    The amplitude array is copied and frozen on construction.  States are
    not forced to unit norm here; :func:`normalize` does that and most
    higher-level operations require it.
    """

    n: int
    amps: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need n >= 1, got n={self.n}")
        amps = np.asarray(self.amps, dtype=complex).copy()
        if amps.shape != (self.n + 1,):
            raise ValueError(
                f"amplitude vector must have length n+1={self.n + 1}, "
                f"got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes must be finite")
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def is_normalized(self, tol: float = 1e-12) -> bool:
        return abs(self.norm - 1.0) <= tol


@dataclass(frozen=True)
class StateClassification:
    """Coefficient-level symmetry summary of a state.

    ``rot_orders`` lists every m with 1 < m <= n such that all pairs of
    indices carrying nonzero amplitude differ by a multiple of m; the MP
    distribution is then invariant under rotation by 2*pi/m about Z.
    ``is_real`` / ``is_positive`` are judged after removing a global
    phase that makes the largest-magnitude amplitude real positive.
    """

    is_positive: bool
    is_real: bool
    rot_orders: tuple[int, ...]

    @property
    def max_rot_order(self) -> int:
        """Largest valid m (minimal rotation angle), 1 if none."""
        return self.rot_orders[-1] if self.rot_orders else 1


def make_dicke(n: int, k: int) -> SymmetricState:
    """The Dicke state ``|S_{n,k}>`` with exactly ``k`` excitations.

    Parameters
    ----------
    n : int
        Number of qubits, ``n >= 1``.
    k : int
        Excitation number, ``0 <= k <= n``.

    Returns
    -------
    SymmetricState
        Unit state with ``a_k = 1`` and all other amplitudes zero.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got n={n}")
    if not 0 <= k <= n:
        raise ValueError(f"excitation number k={k} outside 0..{n}")
    amps = np.zeros(n + 1, dtype=complex)
    amps[k] = 1.0
    return SymmetricState(n, amps)


def normalize(state: SymmetricState) -> SymmetricState:
    """Scale the amplitude vector to unit norm, preserving direction."""
    nrm = state.norm
    if nrm == 0.0:
        raise ValueError("cannot normalize the zero state")
    return SymmetricState(state.n, state.amps / nrm)


def inner(a: SymmetricState, b: SymmetricState) -> complex:
    """Hilbert-space inner product ``<a|b>`` in the Dicke basis."""
    if a.n != b.n:
        raise ValueError(f"qubit count mismatch: {a.n} != {b.n}")
    return complex(np.vdot(a.amps, b.amps))


def _check_unitary(alpha: complex, beta: complex, tol: float = 1e-12) -> None:
    dev = abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0)
    if dev > tol:
        raise ValueError(
            f"(alpha, beta) does not define a unitary: |a|^2+|b|^2 off by {dev:.3e}"
        )


def rotate_state(
    state: SymmetricState,
    alpha: complex,
    beta: complex,
    phase: float = 0.0,
) -> SymmetricState:
    """Apply the same single-qubit unitary to every qubit.

    The unitary is ``U = e^{i phase} [[alpha, -conj(beta)], [beta,
    conj(alpha)]]`` with ``|alpha|^2 + |beta|^2 = 1``, acting as
    ``U^{(x) n}`` on the joint state.  Geometric entanglement is
    invariant and the Majorana points of the output are the rotated
    Majorana points of the input.

    Notes
    -----
    The rotation is carried out directly on the Dicke coefficients
    through the degree-n irreducible representation of SU(2): the state
    corresponds to the binary form ``p(x, y) = sum_k c_k x^{n-k} y^k``
    with ``c_k = a_k sqrt(C(n,k))``, and ``U`` acts by the linear
    substitution ``x -> u00 x + u01 y``, ``y -> u10 x + u11 y``.  This
    avoids compounding root-finding error; compatibility with the point
    map is a cross-check, not the definition.
    """
    _check_unitary(alpha, beta)
    n = state.n
    # substituting the TRANSPOSE of U realizes the action of U itself:
    # plugging a matrix M into the form acts on each Majorana spinor by
    # M^T, so M = U^T moves every point by U as promised above
    u00, u01 = complex(alpha), complex(beta)
    u10, u11 = -np.conj(complex(beta)), np.conj(complex(alpha))
    root_binom = np.array([np.sqrt(comb(n, k)) for k in range(n + 1)])
    c = state.amps * root_binom
    out = np.zeros(n + 1, dtype=complex)
    for k in range(n + 1):
        if c[k] == 0.0:
            continue
        # coefficient vectors (in y-degree) of (u00 x + u01 y)^(n-k), (u10 x + u11 y)^k
        ka = np.arange(n - k + 1)
        fa = np.array([comb(n - k, int(j)) for j in ka], dtype=complex)
        fa *= u00 ** (n - k - ka) * u01**ka
        kb = np.arange(k + 1)
        fb = np.array([comb(k, int(j)) for j in kb], dtype=complex)
        fb *= u10 ** (k - kb) * u11**kb
        out += c[k] * np.convolve(fa, fb)
    out *= np.exp(1j * n * float(phase))
    return SymmetricState(n, out / root_binom)


def _canonical_phase(amps: np.ndarray) -> np.ndarray:
    """Remove the global phase that makes the largest amplitude real positive."""
    idx = int(np.argmax(np.abs(amps)))
    ref = amps[idx]
    if ref == 0.0:
        return amps.copy()
    return amps * (np.conj(ref) / abs(ref))


def classify(
    state: SymmetricState, tol: float = DEFAULT_SUPPORT_TOL
) -> StateClassification:
    """Judge positivity, realness and Z-axis rotation orders of a state.

    Parameters
    ----------
    state : SymmetricState
        Normalized state.
    tol : float
        Amplitudes with ``|a_k| <= tol`` count as zero; the default sits
        below root-finding round-trip noise.

    Returns
    -------
    StateClassification
        ``rot_orders`` holds every m in (1, n] under which the support
        spacings vanish mod m; a single-index support satisfies all m
        vacuously.
    """
    amps = _canonical_phase(state.amps)
    support = np.flatnonzero(np.abs(amps) > tol)
    is_real = bool(np.max(np.abs(amps.imag), initial=0.0) <= tol)
    is_positive = is_real and bool(np.min(amps.real[support], initial=0.0) >= -tol)
    orders = []
    if support.size:
        spacings = support[1:] - support[0]
        for m in range(2, state.n + 1):
            if np.all(spacings % m == 0):
                orders.append(m)
    return StateClassification(
        is_positive=is_positive, is_real=is_real, rot_orders=tuple(orders)
    )
