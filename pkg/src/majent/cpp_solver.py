"""Global maximization of the amplitude function over the Bloch sphere.

The closest product points (CPPs) of a symmetric state are the global
maxima of ``f(theta, phi) = |<lambda(theta, phi)|psi>|``; the geometric
measure of entanglement follows as ``E_g = -log2 max f^2``.  The solver
is a deterministic multistart ascent:

* seeds on a Fibonacci lattice (plus the positive meridian when the
  Lemma-driven fast path applies),
* batched second-order refinement in local tangent coordinates that are
  re-centered on every iteration, so the azimuth singularity at the
  poles never enters,
* deduplication and a tie window that keeps exactly degenerate maxima
  (Platonic orbits) together.

Refinement works on the stereographic variable ``w = e^{-i phi}
tan(theta / 2)``.  For a seed at ``w0`` the frame is rotated so that the
seed sits at the origin; the rotated coefficient vector's first three
entries (a 2-jet) are obtained from polynomial derivative evaluations
alone, giving the exact gradient and Hessian of ``F = f^2`` in the
tangent plane at O(n) cost per seed.  Seeds on the southern hemisphere
are handled in an antipodally flipped frame so |w| stays bounded by 1.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache
from math import ceil, comb

import numpy as np

from .majorana import amplitude_grid, majorana_polynomial, state_to_points
from .states import BlochPoint, SymmetricState, classify

__all__ = [
    "SolverConfig",
    "CPPSet",
    "EntanglementValue",
    "StructureReport",
    "SolverError",
    "find_cpps",
    "geometric_entanglement",
    "detect_ring",
    "verify_cpp_structure",
]

_GOLDEN = (1.0 + np.sqrt(5.0)) / 2.0
_NORM_TOL = 1e-9


class SolverError(RuntimeError):
    """No multistart seed reached the convergence criterion."""


@dataclass(frozen=True)
class SolverConfig:
    """Multistart refinement parameters.

    Attributes
    ----------
    n_starts : int
        Number of multistart seeds (>= 12).
    refine_tol : float
        Gradient-norm stopping threshold of the ascent.
    dedup_angle : float
        Angular radius under which two converged points merge.
    max_iter : int
        Refinement iteration cap per seed.
    meridian_only : bool
        Exploit the positive-state meridian restriction: for positive
        states, seed only the phi = 0 meridian and rebuild the full CPP
        orbit from the rotational symmetry; for other states this adds
        meridian seeds on top of the lattice.
    rng_seed : int
        Seed for the random orientation of the seed lattice.
    """

    n_starts: int = 400
    refine_tol: float = 1e-12
    dedup_angle: float = 1e-4
    max_iter: int = 100
    meridian_only: bool = False
    rng_seed: int = 42

    def __post_init__(self) -> None:
        if self.n_starts < 12:
            raise ValueError(f"n_starts must be >= 12, got {self.n_starts}")
        if not 0.0 < self.dedup_angle < 0.2:
            raise ValueError(f"dedup_angle must lie in (0, 0.2), got {self.dedup_angle}")
        if self.refine_tol <= 0.0:
            raise ValueError(f"refine_tol must be positive, got {self.refine_tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")


@dataclass(frozen=True)
class CPPSet:
    """Global maxima of the amplitude function.

    ``max_value`` is the maximal f itself (not f squared).  For states
    whose maxima form a continuous parallel of latitude, ``is_ring`` is
    set by :func:`detect_ring` and ``ring_theta`` carries the polar
    angle; the listed points then sample the ring rather than exhaust
    it, and the pairwise-separation guarantee is waived.
    """

    cpps: tuple[BlochPoint, ...]
    max_value: float
    is_ring: bool = False
    ring_theta: float | None = None


@dataclass(frozen=True)
class EntanglementValue:
    """Geometric entanglement in both conventions.

    ``eg_log2 = -log2(max f^2)`` and ``eg_linear = 1 - max f^2``, so
    ``eg_linear = 1 - 2**(-eg_log2)`` always holds.
    """

    eg_log2: float
    eg_linear: float


@dataclass(frozen=True)
class StructureReport:
    """Outcome of the positive-state CPP structure checks.

    ``state_class`` is one of ``"a"`` (rotationally symmetric, CPPs only
    at the poles), ``"b"`` (rotationally symmetric with off-pole CPPs),
    ``"c"`` (no rotational symmetry, all CPPs on the phi = 0 meridian),
    or ``"excluded: Dicke"``.  ``cpp_bound`` is the applicable count
    bound (2n-4, n, or ceil((n+2)/2)); ``meridians_ok`` records whether
    every CPP azimuth lies on an allowed meridian 2*pi*r/m.  The report
    is a solver sanity check, not a proof.
    """

    state_class: str
    rot_order: int
    poles_occupied: bool
    cpp_count: int
    cpp_bound: int | None
    bound_ok: bool
    meridians_ok: bool

    @property
    def passes(self) -> bool:
        return self.bound_ok and self.meridians_ok


# ----------------------------------------------------------------------
# refinement engine
# ----------------------------------------------------------------------

def _flip_coeffs(c: np.ndarray) -> np.ndarray:
    """Coefficients after the antipodal frame flip w -> -1/w."""
    n = len(c) - 1
    signs = (-1.0) ** ((n - np.arange(n + 1)) % 2)
    return signs * c[::-1]


def _horner3(c: np.ndarray, w: np.ndarray):
    """P(w), P'(w), P''(w) in one Horner sweep, vectorized over w."""
    p = np.zeros_like(w)
    dp = np.zeros_like(w)
    d2p = np.zeros_like(w)
    for ck in c[::-1]:
        d2p = d2p * w + 2.0 * dp
        dp = dp * w + p
        p = p * w + ck
    return p, dp, d2p


def _local_jet(c: np.ndarray, w: np.ndarray):
    """First three rotated-frame coefficients at each w.

    Rotating the frame so that w maps to the origin turns the
    coefficient vector into ``G(v) = (1 + |w|^2)^{-n/2} (1 - conj(w)
    v)^n P((w + v) / (1 - conj(w) v))``; its Taylor coefficients
    ``c0, c1, c2`` at v = 0 require only P, P', P''.
    """
    n = len(c) - 1
    b = np.conj(w)
    q = 1.0 + np.abs(w) ** 2
    p, dp, d2p = _horner3(c, w)
    pref = q ** (-n / 2.0)
    c0 = pref * p
    c1 = pref * (q * dp - n * b * p)
    c2 = pref * 0.5 * (q * q * d2p - 2.0 * (n - 1) * b * q * dp + n * (n - 1) * b * b * p)
    return c0, c1, c2


def _refine(
    c: np.ndarray,
    w: np.ndarray,
    flipped: np.ndarray,
    max_iter: int,
    grad_tol: float,
    step_cap: float = 0.5,
):
    """Batched modified-Newton ascent of F = f^2 over all seeds at once.

    The 2x2 tangent Hessian is shifted just past its largest eigenvalue
    whenever it fails to be negative definite, so the step is always an
    ascent direction; at ring-degenerate maxima the shift leaves the
    radial Newton contraction intact.  Returns final coordinates, frame
    flags, F values and a per-seed convergence mask.
    """
    n = len(c) - 1
    cflip = _flip_coeffs(c)
    F = np.zeros(w.shape, dtype=float)
    converged = np.zeros(w.shape, dtype=bool)
    for _ in range(max_iter):
        c0a, c1a, c2a = _local_jet(c, w)
        c0b, c1b, c2b = _local_jet(cflip, w)
        c0 = np.where(flipped, c0b, c0a)
        c1 = np.where(flipped, c1b, c1a)
        c2 = np.where(flipped, c2b, c2a)
        F = np.abs(c0) ** 2
        g = np.conj(c0) * c1
        h = np.conj(c0) * c2
        gx, gy = 2.0 * g.real, -2.0 * g.imag
        grad_norm = np.hypot(gx, gy)
        converged = grad_norm <= grad_tol
        if converged.all():
            break
        s = np.abs(c1) ** 2 - n * F
        h11 = 2.0 * s + 4.0 * h.real
        h22 = 2.0 * s - 4.0 * h.real
        h12 = -4.0 * h.imag
        mean = 0.5 * (h11 + h22)
        rad = np.sqrt(0.25 * (h11 - h22) ** 2 + h12 * h12)
        lam_max = mean + rad
        scale = np.maximum.reduce([rad, np.abs(mean), n * np.maximum(F, 1e-30)])
        shift = np.where(lam_max > -1e-9 * scale, lam_max + 1e-2 * scale, 0.0)
        a11 = h11 - shift
        a22 = h22 - shift
        det = a11 * a22 - h12 * h12
        det = np.where(det == 0.0, 1.0, det)
        dx = -(a22 * gx - h12 * gy) / det
        dy = -(a11 * gy - h12 * gx) / det
        d = dx + 1j * dy
        mag = np.abs(d)
        over = mag > step_cap
        d = np.where(over, d * (step_cap / np.where(over, mag, 1.0)), d)
        d = np.where(converged, 0.0, d)
        w = (w + d) / (1.0 - np.conj(w) * d)
        far = np.abs(w) > 1.5
        w = np.where(far, -1.0 / np.where(far, w, 1.0), w)
        flipped = flipped ^ far
    return w, flipped, F, converged


def _sphere_to_frame(theta: np.ndarray, phi: np.ndarray):
    """Stereographic coordinates plus flip flags, |w| <= 1 guaranteed."""
    half = np.clip(theta / 2.0, 0.0, np.pi / 2.0)
    t = np.tan(half)
    w = t * np.exp(-1j * phi)
    flipped = np.abs(w) > 1.0
    w = np.where(flipped, -1.0 / np.where(flipped, w, 1.0), w)
    return w, flipped


def _frame_to_sphere(w: np.ndarray, flipped: np.ndarray):
    theta = 2.0 * np.arctan(np.abs(w))
    phi = (-np.angle(w)) % (2 * np.pi)
    theta = np.where(flipped, np.pi - theta, theta)
    phi = np.where(flipped, (np.pi + np.angle(w)) % (2 * np.pi), phi)
    return theta, phi


def _fibonacci_seeds(m: int, rng: np.random.Generator):
    """Fibonacci sphere lattice in a random (seeded) orientation."""
    i = np.arange(m)
    z = 1.0 - (2.0 * i + 1.0) / m
    phi = (2.0 * np.pi * i / _GOLDEN) % (2 * np.pi)
    s = np.sqrt(1.0 - z * z)
    pts = np.column_stack([s * np.cos(phi), s * np.sin(phi), z])
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q *= np.sign(np.diag(r))
    pts = pts @ q.T
    theta = np.arccos(np.clip(pts[:, 2], -1.0, 1.0))
    az = np.arctan2(pts[:, 1], pts[:, 0]) % (2 * np.pi)
    return theta, az


def _run_refinement(c, w, flipped, config: SolverConfig, threads: int):
    if threads <= 1 or len(w) < 2 * threads:
        return _refine(c, w, flipped, config.max_iter, config.refine_tol)
    chunks_w = np.array_split(w, threads)
    chunks_f = np.array_split(flipped, threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(
            pool.map(
                lambda args: _refine(c, args[0], args[1], config.max_iter, config.refine_tol),
                zip(chunks_w, chunks_f),
            )
        )
    return tuple(np.concatenate([p[j] for p in parts]) for j in range(4))


def _dedup_points(theta, phi, values, dedup_angle):
    """Greedy dedup in descending value order; deterministic."""
    order = np.lexsort((theta, phi, -values))
    vs = np.column_stack(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)]
    )
    cos_thresh = np.cos(dedup_angle)
    kept: list[int] = []
    for i in order:
        if all(np.dot(vs[i], vs[j]) < cos_thresh for j in kept):
            kept.append(i)
    return kept


def find_cpps(
    state: SymmetricState, config: SolverConfig | None = None, threads: int = 1
) -> CPPSet:
    """All closest product points of a normalized symmetric state.

    Multistart seeds are refined by the tangent-plane ascent; converged
    points within ``10 * refine_tol`` (in f) of the best are reported,
    deduplicated by ``dedup_angle``.  With ``meridian_only`` and a
    positive state, only the phi = 0 meridian is seeded and the orbit
    over the allowed azimuths ``2 pi r / m`` is reconstructed — for a
    positive state every CPP has a representative on that meridian, so
    nothing is lost.

    Raises
    ------
    ValueError
        If the state is not normalized.
    SolverError
        If no seed converges within ``max_iter``.
    """
    if config is None:
        config = SolverConfig()
    if not state.is_normalized(_NORM_TOL):
        raise ValueError(
            f"state must be normalized (|norm - 1| = {abs(state.norm - 1.0):.2e})"
        )
    c = majorana_polynomial(state).coeffs
    rng = np.random.default_rng(config.rng_seed)
    meridian_path = False
    rot_order = 1
    if config.meridian_only:
        cl = classify(state)
        meridian_path = cl.is_positive
        rot_order = cl.max_rot_order

    if meridian_path:
        theta = np.linspace(0.0, np.pi, config.n_starts)
        phi = np.zeros_like(theta)
    else:
        theta, phi = _fibonacci_seeds(config.n_starts, rng)
        if config.meridian_only:
            extra = np.linspace(0.0, np.pi, config.n_starts)
            theta = np.concatenate([theta, extra])
            phi = np.concatenate([phi, np.zeros_like(extra)])

    w, fl = _sphere_to_frame(theta, phi)
    w, fl, F, ok = _run_refinement(c, w, fl, config, threads)
    if not ok.any():
        raise SolverError(
            f"no converged seed out of {len(w)} after {config.max_iter} iterations"
        )
    f_val = np.sqrt(F[ok])
    th, ph = _frame_to_sphere(w[ok], fl[ok])
    fmax = float(f_val.max())
    window = f_val >= fmax - 10.0 * config.refine_tol
    th, ph, f_val = th[window], ph[window], f_val[window]

    kept = _dedup_points(th, ph, f_val, config.dedup_angle)
    points = [BlochPoint(float(th[i]), float(ph[i])) for i in kept]

    if meridian_path and rot_order > 1:
        orbit: list[BlochPoint] = []
        for p in points:
            if p.theta < config.dedup_angle or np.pi - p.theta < config.dedup_angle:
                candidates = [p]
            else:
                candidates = [
                    BlochPoint(p.theta, 2.0 * np.pi * r / rot_order)
                    for r in range(rot_order)
                ]
            for q in candidates:
                if all(q.angle_to(o) >= config.dedup_angle for o in orbit):
                    orbit.append(q)
        points = orbit

    points.sort(key=lambda p: (p.theta, p.phi))
    return CPPSet(cpps=tuple(points), max_value=fmax)


def geometric_entanglement(
    state: SymmetricState, config: SolverConfig | None = None, threads: int = 1
) -> EntanglementValue:
    """E_g of a state from the solved amplitude maximum.

    ``eg_log2 = -log2(max f^2)``; the linear variant ``1 - max f^2`` is
    reported alongside.
    """
    cppset = find_cpps(state, config, threads=threads)
    fmax2 = cppset.max_value**2
    return EntanglementValue(eg_log2=float(-np.log2(fmax2)), eg_linear=float(1.0 - fmax2))


def detect_ring(
    state: SymmetricState, cppset: CPPSet, config: SolverConfig | None = None
) -> CPPSet:
    """Flag maxima that form a continuous parallel instead of isolated points.

    A state with a single nonzero Dicke coefficient 0 < k < n has its
    maxima on the full circle ``cos(theta/2) = sqrt((n-k)/n)``; beyond
    that exact case, a ring is declared when at least ``max(8, n)``
    refined maxima share one polar angle within ``dedup_angle`` and f is
    flat along that parallel to within ``refine_tol``.  The threshold is
    heuristic: a continuous ring cannot be represented exactly by a
    finite point set, so ring cases are flagged rather than enumerated.
    """
    if config is None:
        config = SolverConfig()
    n = state.n
    support = np.flatnonzero(np.abs(state.amps) > 1e-10)
    if support.size == 1 and 0 < support[0] < n:
        k = int(support[0])
        ring_theta = 2.0 * np.arccos(np.sqrt((n - k) / n))
        return replace(cppset, is_ring=True, ring_theta=float(ring_theta))
    if len(cppset.cpps) >= max(8, n):
        thetas = np.array([p.theta for p in cppset.cpps])
        if float(np.ptp(thetas)) <= config.dedup_angle:
            theta_bar = float(np.median(thetas))
            ring_f = amplitude_grid(
                state, np.array([theta_bar]), 2 * np.pi * np.arange(256) / 256
            )[0]
            if float(ring_f.max() - ring_f.min()) < config.refine_tol * 10.0:
                return replace(cppset, is_ring=True, ring_theta=theta_bar)
    return cppset


def _is_dicke(state: SymmetricState, tol: float = 1e-10) -> bool:
    return np.flatnonzero(np.abs(state.amps) > tol).size == 1


def verify_cpp_structure(state: SymmetricState, cppset: CPPSet) -> StructureReport:
    """Check a positive state's CPP set against the structure theorems.

    Classifies the state as (a) rotationally symmetric with only pole
    CPPs, (b) rotationally symmetric with off-pole CPPs, or (c) not
    rotationally symmetric; verifies the applicable CPP count bound
    (2n-4 when both poles carry MPs, else n, for class b; ceil((n+2)/2)
    for class c) and that every CPP azimuth lies on an allowed meridian.
    Dicke states are excluded by the theorems and reported as such.
    """
    cl = classify(state)
    if not cl.is_positive:
        raise ValueError("structure checks apply to positive states only")
    n = state.n
    if _is_dicke(state):
        return StructureReport(
            state_class="excluded: Dicke",
            rot_order=cl.max_rot_order,
            poles_occupied=False,
            cpp_count=len(cppset.cpps),
            cpp_bound=None,
            bound_ok=True,
            meridians_ok=True,
        )
    m = cl.max_rot_order
    pole_tol = 1e-6
    # an MP sits at the north pole iff a_n = 0, at the south pole iff a_0 = 0
    poles_occupied = bool(
        abs(state.amps[n]) <= 1e-10 and abs(state.amps[0]) <= 1e-10
    )
    at_pole = [
        p.theta < pole_tol or np.pi - p.theta < pole_tol for p in cppset.cpps
    ]
    if m == 1:
        state_class = "c"
        bound = ceil((n + 2) / 2)
    elif all(at_pole):
        state_class = "a"
        bound = 2
    else:
        state_class = "b"
        bound = 2 * n - 4 if poles_occupied else n
    count = len(cppset.cpps)
    meridians = (2.0 * np.pi / m) * np.arange(m)
    mer_tol = 1e-6
    meridians_ok = True
    for p, pole in zip(cppset.cpps, at_pole):
        if pole:
            continue
        gap = np.abs(((p.phi - meridians) + np.pi) % (2 * np.pi) - np.pi)
        if float(gap.min()) > mer_tol:
            meridians_ok = False
            break
    return StructureReport(
        state_class=state_class,
        rot_order=m,
        poles_occupied=poles_occupied,
        cpp_count=count,
        cpp_bound=bound,
        bound_ok=count <= bound,
        meridians_ok=meridians_ok,
    )


# ----------------------------------------------------------------------
# fast value-only paths used by the outer search
# ----------------------------------------------------------------------

@lru_cache(maxsize=64)
def _meridian_basis(n: int, grid_size: int) -> tuple[np.ndarray, np.ndarray]:
    """Dense phi = 0 meridian samples of the Dicke amplitude profiles."""
    theta = np.linspace(0.0, np.pi, grid_size)
    k = np.arange(n + 1)
    root_binom = np.sqrt([comb(n, int(kk)) for kk in k])
    ct = np.cos(theta[:, None] / 2.0)
    st = np.sin(theta[:, None] / 2.0)
    basis = root_binom[None, :] * ct ** (n - k)[None, :] * st ** k[None, :]
    return theta, basis


def _theta_derivative_coeffs(c: np.ndarray) -> np.ndarray:
    """Coefficients of d/dtheta of a meridian profile.

    A profile ``p(theta) = sum_k c_k cos^(n-k)(theta/2) sin^k(theta/2)``
    has a derivative of exactly the same form; this returns its
    coefficient vector, so p, p', p'' all evaluate through one shared
    power matrix.
    """
    n = len(c) - 1
    k = np.arange(n + 1)
    d = np.zeros(n + 1)
    d[:-1] += c[1:] * k[1:]
    d[1:] -= c[:-1] * (n - k[:-1])
    return 0.5 * d


def positive_max_amplitude(amps: np.ndarray, polish_iters: int = 8) -> float:
    """Maximal f for a normalized nonnegative amplitude vector.

    For positive states every global maximum has a representative on the
    phi = 0 meridian, so a dense meridian scan followed by scalar Newton
    polish of the leading local maxima yields the global value at a tiny
    fraction of the full solver's cost.  This is the inner evaluation of
    the outer entanglement search; it assumes (and does not check) that
    the amplitudes are real and nonnegative.
    """
    n = len(amps) - 1
    theta, basis = _meridian_basis(n, 8 * n + 17)
    prof = basis @ amps
    interior = (prof[1:-1] >= prof[:-2]) & (prof[1:-1] >= prof[2:])
    cand = np.flatnonzero(interior) + 1
    if len(cand) == 0:
        return float(max(prof[0], prof[-1]))
    if len(cand) > 6:
        cand = cand[np.argsort(prof[cand])[-6:]]
    c = amps * _root_binom_cached(n)
    e1 = _theta_derivative_coeffs(c)
    e2 = _theta_derivative_coeffs(e1)
    k = np.arange(n + 1)
    th = theta[cand]
    spacing = theta[1] - theta[0]
    for _ in range(polish_iters):
        ct = np.cos(th[:, None] / 2.0)
        st = np.sin(th[:, None] / 2.0)
        powers = ct ** (n - k)[None, :] * st ** k[None, :]
        p = powers @ c
        dp = powers @ e1
        d2p = powers @ e2
        g = p * dp
        h = dp * dp + p * d2p
        step = np.where(h < 0.0, -g / np.where(h < 0.0, h, -1.0), 0.0)
        th = np.clip(th + np.clip(step, -spacing, spacing), 0.0, np.pi)
    ct = np.cos(th[:, None] / 2.0)
    st = np.sin(th[:, None] / 2.0)
    p = (ct ** (n - k)[None, :] * st ** k[None, :]) @ c
    return float(max(np.abs(p).max(), prof[0], prof[-1], prof[cand].max()))


@lru_cache(maxsize=64)
def _root_binom_cached(n: int) -> np.ndarray:
    return np.sqrt([comb(n, k) for k in range(n + 1)])


def sphere_max_amplitude(
    amps: np.ndarray, n_seeds: int = 32, iters: int = 30, rng_seed: int = 42
) -> float:
    """Maximal f for a general normalized amplitude vector (value only).

    A reduced-seed version of :func:`find_cpps` that skips dedup and
    point bookkeeping; used as the inner evaluation of general-mode
    searches where only the value matters.
    """
    n = len(amps) - 1
    c = (np.asarray(amps, dtype=complex) * _root_binom_cached(n))
    rng = np.random.default_rng(rng_seed)
    theta, phi = _fibonacci_seeds(n_seeds, rng)
    w, fl = _sphere_to_frame(theta, phi)
    _, _, F, ok = _refine(c, w, fl, iters, 1e-13)
    if ok.any():
        return float(np.sqrt(F[ok].max()))
    return float(np.sqrt(F.max()))
