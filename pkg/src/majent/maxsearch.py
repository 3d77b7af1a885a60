"""Outer maximization of entanglement over symmetric-state space.

The outer problem — find the symmetric state whose amplitude maximum is
as small as possible — is attacked in two stages.  A restarted
Nelder-Mead exploration runs over rotational-symmetry support masks: a
state invariant (up to phase) under a z-rotation by 2*pi/m has Dicke
support on a single residue class k = k0 (mod m), so each (m, k0) pair
defines a low-dimensional subspace that is searched independently.
Near any good candidate the inner maximum is attained at several points
at once and the landscape is only piecewise smooth, which stalls
simplex descent; a second stage therefore re-poses the problem as
height flattening — minimize a single bound t subject to f <= t at
every contact point, growing the contact set by exchange — which is
linear in the amplitudes for nonnegative coefficients and
cone-constrained for complex ones, and converges to machine precision.

The catalog of states whose Majorana points form Platonic solids, and
classical point-configuration baselines (pairwise repulsion and
packing optima), live here as comparison anchors.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.optimize import minimize

from .cpp_solver import (
    EntanglementValue,
    SolverConfig,
    SolverError,
    _dedup_points,
    _fibonacci_seeds,
    _frame_to_sphere,
    _refine,
    _root_binom_cached,
    _sphere_to_frame,
    _theta_derivative_coeffs,
    find_cpps,
    positive_max_amplitude,
    sphere_max_amplitude,
)
from .majorana import MajoranaPoints, points_to_state, state_to_points
from .states import BlochPoint, SymmetricState, normalize

__all__ = [
    "SearchConfig",
    "SearchResult",
    "ClassicalConfig",
    "search_max",
    "platonic_state",
    "classical_points",
    "evaluate_candidate",
    "support_masks",
    "min_pairwise_angle",
    "coulomb_energy",
]

_MODES = ("positive", "real", "general")
_PLATONIC_COEFFS: dict[str, tuple[int, dict[int, float]]] = {
    "tetrahedron": (4, {0: 1.0, 3: np.sqrt(2.0)}),
    "octahedron": (6, {1: 1.0, 5: 1.0}),
    "icosahedron": (12, {1: np.sqrt(7.0), 6: -np.sqrt(11.0), 11: -np.sqrt(7.0)}),
    "dodecahedron": (
        20,
        {
            0: np.sqrt(187.0),
            5: np.sqrt(627.0),
            10: np.sqrt(247.0),
            15: -np.sqrt(627.0),
            20: np.sqrt(187.0),
        },
    ),
}


@dataclass(frozen=True)
class SearchConfig:
    """Outer-search parameters.

    ``mode`` selects the coefficient domain: ``positive`` (nonnegative
    real), ``real`` (signed real), or ``general`` (complex).
    ``rot_order`` restricts the support masks to a single rotational
    order m; when None every order up to n is enumerated.
    ``outer_restarts`` applies per mask in the simplex stage and caps
    the flattening-stage restarts; the restart RNG is derived from
    ``rng_seed`` plus a global restart index, so runs are reproducible
    and parallelizable.
    """

    n: int
    mode: str = "positive"
    rot_order: int | None = None
    outer_restarts: int = 12
    outer_tol: float = 1e-6
    inner: SolverConfig = field(default_factory=SolverConfig)
    rng_seed: int = 42

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"search requires n >= 2, got {self.n}")
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {self.mode!r}")
        if self.outer_restarts < 1:
            raise ValueError(f"outer_restarts must be >= 1, got {self.outer_restarts}")
        if self.rot_order is not None and not 1 <= self.rot_order <= self.n:
            raise ValueError(f"rot_order must lie in [1, n], got {self.rot_order}")
        if self.outer_tol <= 0.0:
            raise ValueError(f"outer_tol must be positive, got {self.outer_tol}")


@dataclass(frozen=True)
class SearchResult:
    """Best state found by an outer search.

    ``restarts_agreeing`` counts restarts whose final value lies within
    ``outer_tol`` of the best; ``history`` records (restart index, best
    value so far).  The result is a heuristic optimum, not a certificate.
    """

    state: SymmetricState
    points: MajoranaPoints
    entanglement: EntanglementValue
    restarts_agreeing: int
    history: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class ClassicalConfig:
    """Parameters for the classical point-configuration baselines.

    ``problem`` is ``thomson`` (minimize the pairwise inverse-distance
    energy) or ``toth`` (maximize the minimal pairwise angle).
    """

    n: int
    problem: str = "thomson"
    restarts: int = 16
    step_tol: float = 1e-12
    rng_seed: int = 42

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need n >= 2 points, got {self.n}")
        if self.problem not in ("toth", "thomson"):
            raise ValueError(f"problem must be 'toth' or 'thomson', got {self.problem!r}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")


# ----------------------------------------------------------------------
# support masks and the simplex stage
# ----------------------------------------------------------------------

def support_masks(n: int, rot_order: int | None = None) -> list[tuple[int, ...]]:
    """Candidate Dicke-support masks from rotational symmetry.

    For each order m, the support of an order-m rotationally symmetric
    state is one residue class modulo m; enumerating (m, k0) pairs and
    deduplicating gives every candidate subspace.  Order 1 contributes
    the full support.  The masks are sorted by size so cheap subspaces
    are searched first.
    """
    orders = [rot_order] if rot_order is not None else list(range(1, n + 1))
    seen: set[tuple[int, ...]] = set()
    for m in orders:
        if m == 1:
            seen.add(tuple(range(n + 1)))
            continue
        for k0 in range(m):
            seen.add(tuple(range(k0, n + 1, m)))
    return sorted(seen, key=lambda s: (len(s), s))


def _params_to_amps(x: np.ndarray, n: int, support: tuple[int, ...], mode: str) -> np.ndarray:
    if mode == "general":
        half = len(x) // 2
        coeffs = x[:half] + 1j * x[half:]
    elif mode == "positive":
        coeffs = np.abs(x)
    else:
        coeffs = x.astype(float)
    nrm = np.linalg.norm(coeffs)
    if nrm == 0.0:
        coeffs = np.ones_like(coeffs)
        nrm = np.linalg.norm(coeffs)
    amps = np.zeros(n + 1, dtype=complex if mode == "general" else float)
    amps[list(support)] = coeffs / nrm
    return amps


# ----------------------------------------------------------------------
# uniform-height refinement: meridian profile (nonnegative coefficients)
# ----------------------------------------------------------------------

def _profile_rows(n: int, thetas: np.ndarray) -> np.ndarray:
    """Meridian basis rows sqrt(C(n,k)) cos^(n-k)(t/2) sin^k(t/2)."""
    k = np.arange(n + 1)
    rb = _root_binom_cached(n)
    ct = np.cos(thetas[:, None] / 2.0)
    st = np.sin(thetas[:, None] / 2.0)
    return rb[None, :] * ct ** (n - k)[None, :] * st ** k[None, :]


def _profile_peaks(n: int, amps: np.ndarray, grid: int = 512):
    """Newton-polished local maxima (thetas, values) of the meridian
    profile, endpoints included."""
    theta = np.linspace(0.0, np.pi, grid)
    prof = _profile_rows(n, theta) @ amps
    interior = (prof[1:-1] >= prof[:-2]) & (prof[1:-1] >= prof[2:])
    th = theta[np.flatnonzero(interior) + 1]
    c = amps * _root_binom_cached(n)
    e1 = _theta_derivative_coeffs(c)
    e2 = _theta_derivative_coeffs(e1)
    k = np.arange(n + 1)
    spacing = theta[1] - theta[0]
    for _ in range(10):
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
    ths = np.concatenate([[0.0], th, [np.pi]])
    vals = _profile_rows(n, ths) @ amps
    order = np.argsort(ths)
    ths, vals = ths[order], vals[order]
    keep = np.concatenate([[True], np.diff(ths) > 1e-7])
    return ths[keep], vals[keep]


def _profile_step(n: int, A: np.ndarray, a: np.ndarray, t: float,
                  support: tuple[int, ...] | None):
    """One epigraph pass: min t s.t. A a <= t, |a| = 1, a >= 0."""
    d = n + 1
    x0 = np.concatenate([a, [t]])
    jac_rows = np.hstack([-A, np.ones((len(A), 1))])
    cons = [
        {
            "type": "eq",
            "fun": lambda x: np.sum(x[:d] ** 2) - 1.0,
            "jac": lambda x: np.concatenate([2.0 * x[:d], [0.0]]),
        },
        {
            "type": "ineq",
            "fun": lambda x: x[-1] - A @ x[:d],
            "jac": lambda x, _J=jac_rows: _J,
        },
    ]
    if support is None:
        free = np.ones(d, dtype=bool)
    else:
        free = np.isin(np.arange(d), support)
    bounds = [(0.0, 1.2) if f else (0.0, 0.0) for f in free] + [(0.0, 1.0)]
    with warnings.catch_warnings():
        # SLSQP's line search probes outside the box before clipping
        warnings.filterwarnings(
            "ignore", message="Values in x were outside bounds", category=RuntimeWarning
        )
        res = minimize(
            lambda x: x[-1],
            x0,
            jac=lambda x: np.concatenate([np.zeros(d), [1.0]]),
            method="SLSQP",
            bounds=bounds,
            constraints=cons,
            options={"maxiter": 400, "ftol": 1e-14},
        )
    a_new = res.x[:d]
    nrm = np.linalg.norm(a_new)
    if nrm < 1e-9:
        return None, np.inf
    return a_new / nrm, float(res.x[-1])


def _flatten_profile(n: int, a0: np.ndarray,
                     support: tuple[int, ...] | None = None, grid: int = 1024):
    """Height flattening of the meridian profile on a fixed dense grid.

    The dense grid keeps every basis direction represented, which is
    what makes the pass land in the right basin; returns (amps, height)
    with the height re-measured on the polished true profile maxima, or
    (None, inf) if the step collapsed.
    """
    theta = np.linspace(0.0, np.pi, grid)
    A = _profile_rows(n, theta)
    a = np.abs(np.asarray(a0, dtype=float))
    off = np.zeros(0, dtype=int)
    if support is not None:
        off = np.setdiff1d(np.arange(n + 1), support)
        a[off] = 0.0
    a /= np.linalg.norm(a)
    t0 = float((A @ a).max())
    a, _ = _profile_step(n, A, a, t0, support)
    if a is None:
        return None, np.inf
    ths, vals = _profile_peaks(n, a)
    return a, float(vals.max())


def _polish_profile(n: int, a: np.ndarray,
                    support: tuple[int, ...] | None = None, iters: int = 30):
    """Exchange refinement of a flattened profile candidate.

    Alternates between locating the true profile maxima and
    re-flattening on the accumulated contact set; keeps the monotone
    guard because the nonnegative subproblem never needs to overshoot.
    """
    ths, vals = _profile_peaks(n, a)
    active = set(np.round(ths, 13))
    t = float(vals.max())
    for _ in range(iters):
        act = np.asarray(sorted(active))
        A = _profile_rows(n, act)
        a_new, t_sub = _profile_step(n, A, a, t, support)
        if a_new is None:
            break
        ths, vals = _profile_peaks(n, a_new)
        tm = float(vals.max())
        if tm > t + 1e-9:
            break
        a, t = a_new, tm
        active |= set(np.round(ths, 13))
        if tm <= t_sub + 1e-14:
            break
    return a, t


# ----------------------------------------------------------------------
# uniform-height refinement: full surface (real or complex coefficients)
# ----------------------------------------------------------------------

def _amplitude_rows(n: int, theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Complex rows of the amplitude functional: f(point) = |row @ amps|."""
    k = np.arange(n + 1)
    rb = _root_binom_cached(n)
    ct = np.cos(theta[:, None] / 2.0)
    st = np.sin(theta[:, None] / 2.0)
    mag = rb[None, :] * ct ** (n - k)[None, :] * st ** k[None, :]
    return mag * np.exp(-1j * np.outer(phi, k))


def _surface_peaks(n: int, amps: np.ndarray, n_seeds: int | None = None,
                   window: float = 2e-2, rng_seed: int = 0):
    """Refined near-top local maxima (theta, phi, f) of the amplitude."""
    if n_seeds is None:
        n_seeds = 64 + 16 * n
    c = np.asarray(amps, dtype=complex) * _root_binom_cached(n)
    rng = np.random.default_rng(rng_seed)
    theta, phi = _fibonacci_seeds(n_seeds, rng)
    w, fl = _sphere_to_frame(theta, phi)
    w, fl, F, ok = _refine(c, w, fl, 80, 1e-13)
    if not ok.any():
        return np.array([]), np.array([]), np.array([])
    f = np.sqrt(F[ok])
    th, ph = _frame_to_sphere(w[ok], fl[ok])
    fmax = f.max()
    keep = f >= fmax * (1.0 - window)
    th, ph, f = th[keep], ph[keep], f[keep]
    kept = _dedup_points(th, ph, f, 1e-4)
    return th[kept], ph[kept], f[kept]


def _surface_height(n: int, amps: np.ndarray, rng_seed: int = 0) -> float:
    """Dense-multistart measurement of the inner maximum."""
    _, _, f = _surface_peaks(n, amps, rng_seed=rng_seed)
    if len(f):
        return float(f.max())
    return sphere_max_amplitude(np.asarray(amps, dtype=complex), rng_seed=rng_seed)


def _merge_contacts(act_t: list[float], act_p: list[float], tol: float = 1e-6):
    """Angular dedup of an accumulated contact set; newest entries win."""
    at = np.asarray(act_t)
    ap = np.asarray(act_p)
    v = np.column_stack([np.sin(at) * np.cos(ap), np.sin(at) * np.sin(ap), np.cos(at)])
    kept: list[int] = []
    for i in range(len(at) - 1, -1, -1):
        if all(v[i] @ v[j] < np.cos(tol) for j in kept):
            kept.append(i)
    kept = kept[::-1]
    return [float(at[i]) for i in kept], [float(ap[i]) for i in kept]


def _surface_step(n: int, A: np.ndarray, x0: np.ndarray,
                  free_re: np.ndarray, free_im: np.ndarray, maxiter: int = 500):
    """One epigraph step: min t s.t. |A a|^2 <= t^2, |a| = 1.

    The variable vector packs (Re a, Im a, t); pinned components get
    degenerate bounds, which is how the phase gauge and support masks
    are imposed.
    """
    d = n + 1
    M = len(A)

    def cons_f(x):
        u = A @ (x[:d] + 1j * x[d:2 * d])
        return x[-1] ** 2 - np.abs(u) ** 2

    def cons_j(x):
        u = A @ (x[:d] + 1j * x[d:2 * d])
        cu = np.conj(u)[:, None]
        jt = np.full((M, 1), 2.0 * x[-1])
        return np.hstack([-2.0 * (cu * A).real, 2.0 * (cu * A).imag, jt])

    bounds = [(-1.2, 1.2) if f else (0.0, 0.0) for f in free_re]
    bounds += [(-1.2, 1.2) if f else (0.0, 0.0) for f in free_im]
    bounds.append((0.0, 1.0))
    cons = [
        {
            "type": "eq",
            "fun": lambda x: np.sum(x[:2 * d] ** 2) - 1.0,
            "jac": lambda x: np.concatenate([2.0 * x[:2 * d], [0.0]]),
        },
        {"type": "ineq", "fun": cons_f, "jac": cons_j},
    ]
    with warnings.catch_warnings():
        # SLSQP's line search probes outside the box before clipping
        warnings.filterwarnings(
            "ignore", message="Values in x were outside bounds", category=RuntimeWarning
        )
        res = minimize(
            lambda x: x[-1],
            x0,
            jac=lambda x: np.concatenate([np.zeros(2 * d), [1.0]]),
            method="SLSQP",
            bounds=bounds,
            constraints=cons,
            options={"maxiter": maxiter, "ftol": 1e-14},
        )
    return res.x[:d] + 1j * res.x[d:2 * d], float(res.x[-1])


def _freedom_masks(n: int, support: tuple[int, ...] | None, real_only: bool):
    d = n + 1
    free_re = np.zeros(d, dtype=bool)
    free_re[list(range(d)) if support is None else list(support)] = True
    free_im = np.zeros(d, dtype=bool) if real_only else free_re.copy()
    return free_re, free_im


def _gauge_pin(a: np.ndarray, free_im: np.ndarray):
    """Rotate the global phase so the largest coefficient is real, and
    pin that coefficient's imaginary part."""
    kstar = int(np.argmax(np.abs(a)))
    fi = free_im.copy()
    fi[kstar] = False
    return a * np.exp(-1j * np.angle(a[kstar])), fi


def _flatten_surface(n: int, a0: np.ndarray,
                     support: tuple[int, ...] | None = None,
                     real_only: bool = False, grid_m: int = 700,
                     rng_seed: int = 0):
    """Height flattening of the amplitude surface on a fixed lattice.

    Returns the flattened coefficient vector, or None if the step
    collapsed; the caller is expected to follow with the exchange
    polish.
    """
    free_re, free_im = _freedom_masks(n, support, real_only)
    a = np.array(a0, dtype=complex)
    if real_only:
        a = a.real.astype(complex)
    a /= np.linalg.norm(a)
    if real_only:
        fi = free_im
    else:
        a, fi = _gauge_pin(a, free_im)
    rng = np.random.default_rng(rng_seed)
    gt, gp = _fibonacci_seeds(grid_m, rng)
    A = _amplitude_rows(n, gt, gp)
    t0 = float(np.abs(A @ a).max())
    x0 = np.concatenate(
        [np.where(free_re, a.real, 0.0), np.where(fi, a.imag, 0.0), [t0]]
    )
    a, _ = _surface_step(n, A, x0, free_re, fi)
    nrm = np.linalg.norm(a)
    if nrm < 1e-6:
        return None
    return a / nrm


def _polish_surface(n: int, a0: np.ndarray,
                    support: tuple[int, ...] | None = None,
                    real_only: bool = False, rng_seed: int = 0,
                    iters: int = 50, n_seeds: int | None = None):
    """Exchange refinement of a flattened surface candidate.

    The exchange subproblem legitimately overshoots near convergence
    (the bound drops below the new true height before both meet), so
    the loop never rejects a step; it tracks the best measured height
    and stops once bound and measurement agree to near machine
    precision.
    """
    free_re, free_im = _freedom_masks(n, support, real_only)
    a = np.array(a0, dtype=complex)
    if real_only:
        a = a.real.astype(complex)
    a /= np.linalg.norm(a)
    th, ph, f = _surface_peaks(n, a, n_seeds=n_seeds, rng_seed=rng_seed)
    if len(th) == 0:
        return a, _surface_height(n, a, rng_seed)
    t = float(f.max())
    best_a, best_t = a.copy(), t
    act_t, act_p = list(th), list(ph)
    for _ in range(iters):
        A = _amplitude_rows(n, np.asarray(act_t), np.asarray(act_p))
        if real_only:
            aa, fi = a, free_im
        else:
            aa, fi = _gauge_pin(a, free_im)
        x0 = np.concatenate(
            [np.where(free_re, aa.real, 0.0), np.where(fi, aa.imag, 0.0), [t]]
        )
        a_new, t_sub = _surface_step(n, A, x0, free_re, fi)
        nrm = np.linalg.norm(a_new)
        if nrm < 1e-9:
            break
        a_new /= nrm
        th, ph, f = _surface_peaks(n, a_new, n_seeds=n_seeds, rng_seed=rng_seed)
        if len(th) == 0:
            break
        tm = float(f.max())
        a, t = a_new, tm
        if tm < best_t:
            best_a, best_t = a_new.copy(), tm
        act_t += list(th)
        act_p += list(ph)
        act_t, act_p = _merge_contacts(act_t, act_p)
        if abs(tm - t_sub) <= 1e-13:
            break
    return best_a, best_t


# ----------------------------------------------------------------------
# flattening-stage restart schedules
# ----------------------------------------------------------------------

def _positive_restarts(n: int, rot_order: int | None, n_restarts: int,
                       rng_seed: int, restart_base: int):
    """Flatten-and-polish schedule for nonnegative coefficients.

    The first restart sweeps every pair and triple support seed (plus a
    dense seed) through the fixed-grid flattening and polishes the best
    few; later restarts re-solve the champion support under fresh noise
    or start from a fresh dense seed.  Returns one (height, amps) per
    restart.
    """
    d = n + 1
    rng = np.random.default_rng(rng_seed + restart_base)
    if rot_order is None:
        groups: list[tuple[tuple[int, ...], tuple[int, ...] | None]] = [
            (tuple(range(d)), None)
        ]
    else:
        groups = [(m, m) for m in support_masks(n, rot_order)]
    cands: list[tuple[float, np.ndarray, tuple[int, ...] | None]] = []
    for mask, fsup in groups:
        if len(mask) == 1:
            a = np.zeros(d)
            a[mask[0]] = 1.0
            cands.append((positive_max_amplitude(a), a, fsup))
            continue
        seeds = sorted(set(combinations(mask, 2)) | set(combinations(mask, 3)))
        for sup in seeds:
            a0 = np.zeros(d)
            a0[list(sup)] = 1.0 + 0.05 * rng.standard_normal(len(sup))
            a, t = _flatten_profile(n, a0, support=fsup)
            if a is not None:
                cands.append((t, a, fsup))
        a0 = np.zeros(d)
        a0[list(mask)] = np.abs(rng.standard_normal(len(mask)))
        a, t = _flatten_profile(n, a0, support=fsup)
        if a is not None:
            cands.append((t, a, fsup))
    cands.sort(key=lambda z: z[0])
    best: tuple[float, np.ndarray, tuple[int, ...] | None] | None = None
    for t, a, fsup in cands[:6]:
        a2, _ = _polish_profile(n, a, support=fsup)
        h = positive_max_amplitude(np.abs(a2))
        if best is None or h < best[0]:
            best = (h, np.abs(a2), fsup)
    assert best is not None
    results = [(best[0], best[1])]
    champ_sup = tuple(np.flatnonzero(best[1] > 1e-8))
    for r in range(1, n_restarts):
        rng_r = np.random.default_rng(rng_seed + restart_base + r)
        a0 = np.zeros(d)
        if r % 2 == 1 or best[2] is not None:
            a0[list(champ_sup)] = 1.0 + 0.15 * rng_r.standard_normal(len(champ_sup))
        else:
            a0 = np.abs(rng_r.standard_normal(d))
        a, _ = _flatten_profile(n, a0, support=best[2])
        if a is None:
            results.append((np.inf, np.zeros(d)))
            continue
        a, _ = _polish_profile(n, a, support=best[2])
        results.append((positive_max_amplitude(np.abs(a)), np.abs(a)))
    return results


def _surface_mask_catalog(n: int, rot_order: int | None) -> list[tuple[int, ...]]:
    """Subspaces flattened in the surface sweep: the requested
    rotational order's masks, or the full space plus every residue
    class of order 2..5."""
    if rot_order is not None:
        return support_masks(n, rot_order)
    masks = [tuple(range(n + 1))]
    seen = {masks[0]}
    for m in (2, 3, 4, 5):
        for k0 in range(m):
            mask = tuple(range(k0, n + 1, m))
            if len(mask) >= 2 and mask not in seen:
                seen.add(mask)
                masks.append(mask)
    return masks


def _complex_restarts(n: int, mode: str, rot_order: int | None,
                      n_restarts: int, rng_seed: int, restart_base: int,
                      pos_amps: np.ndarray | None):
    """Flatten-and-polish schedule for signed-real or complex
    coefficients.

    The first restart sweeps the mask catalog (gaussian seeds per
    subspace, light polish, dense-multistart re-measurement) and gives
    the winner a heavy polish; the second re-polishes the best
    nonnegative state so the wider domain never reports a worse value
    than its positive subset; later restarts re-solve the champion mask
    from fresh seeds.  Returns one (height, amps) per restart.
    """
    real_only = mode == "real"
    light = 48 + 8 * n
    rng = np.random.default_rng(rng_seed + restart_base)
    cands: list[tuple[float, np.ndarray, tuple[int, ...] | None]] = []
    for mask in _surface_mask_catalog(n, rot_order):
        if len(mask) == 1:
            a = np.zeros(n + 1, dtype=complex)
            a[mask[0]] = 1.0
            cands.append((positive_max_amplitude(np.abs(a)), a, mask))
            continue
        for s in range(2 if len(mask) >= 4 else 1):
            a0 = np.zeros(n + 1, dtype=complex)
            gauss = rng.standard_normal(len(mask))
            if not real_only:
                gauss = gauss + 1j * rng.standard_normal(len(mask))
            a0[list(mask)] = gauss
            a = _flatten_surface(
                n, a0, support=mask, real_only=real_only,
                rng_seed=rng_seed + restart_base + 13 * s,
            )
            if a is None:
                continue
            a, _ = _polish_surface(
                n, a, support=mask, real_only=real_only,
                rng_seed=rng_seed, iters=35, n_seeds=light,
            )
            cands.append((_surface_height(n, a, rng_seed), a, mask))
    cands.sort(key=lambda z: z[0])
    t_best, a_best, mask_best = cands[0]
    a_best, _ = _polish_surface(
        n, a_best, support=mask_best, real_only=real_only,
        rng_seed=rng_seed, iters=60,
    )
    t_best = _surface_height(n, a_best, rng_seed)
    results = [(t_best, a_best)]
    for r in range(1, n_restarts):
        rng_r = np.random.default_rng(rng_seed + restart_base + r)
        if r == 1 and pos_amps is not None:
            sup = tuple(np.flatnonzero(np.abs(pos_amps) > 1e-10))
            a, _ = _polish_surface(
                n, np.asarray(pos_amps, dtype=complex), support=sup,
                real_only=real_only, rng_seed=rng_seed, iters=40,
            )
            results.append((_surface_height(n, a, rng_seed), a))
            continue
        a0 = np.zeros(n + 1, dtype=complex)
        gauss = rng_r.standard_normal(len(mask_best))
        if not real_only:
            gauss = gauss + 1j * rng_r.standard_normal(len(mask_best))
        a0[list(mask_best)] = gauss
        a = _flatten_surface(
            n, a0, support=mask_best, real_only=real_only,
            rng_seed=rng_seed + restart_base + r,
        )
        if a is None:
            results.append((np.inf, a0))
            continue
        a, _ = _polish_surface(
            n, a, support=mask_best, real_only=real_only,
            rng_seed=rng_seed, iters=45, n_seeds=light,
        )
        results.append((_surface_height(n, a, rng_seed), a))
    return results


# ----------------------------------------------------------------------
# the outer search
# ----------------------------------------------------------------------

def search_max(config: SearchConfig) -> SearchResult:
    """Heuristic maximization of geometric entanglement.

    Stage one runs restarted Nelder-Mead descents of the inner
    amplitude maximum on the support masks.  Stage two applies the
    uniform-height refinement: a systematic flatten-and-polish sweep
    whose later restarts re-solve the champion under fresh noise.
    Every restart from both stages contributes one final value;
    ``restarts_agreeing`` counts those within ``outer_tol`` of the
    best.  The champion is re-solved with the full point solver so the
    reported entanglement and points are consistent.  Dicke states
    appear as single-index masks, guaranteeing the result is never
    worse than the best Dicke state.
    """
    n, mode = config.n, config.mode
    masks = support_masks(n, config.rot_order)
    best_val = np.inf
    best_amps: np.ndarray | None = None
    finals: list[float] = []
    history: list[tuple[int, float]] = []
    restart_index = 0

    def record(val: float, amps: np.ndarray) -> None:
        nonlocal best_val, best_amps, restart_index
        finals.append(val)
        if val < best_val - 1e-15:
            best_val = val
            best_amps = amps
        history.append((restart_index, float(-2.0 * np.log2(best_val))))
        restart_index += 1

    def nm_objective(x: np.ndarray, support: tuple[int, ...]) -> float:
        amps = _params_to_amps(x, n, support, mode)
        if mode == "positive":
            return positive_max_amplitude(amps)
        # light inner evaluation; finals are re-measured densely below
        return sphere_max_amplitude(
            np.asarray(amps, dtype=complex), n_seeds=24, iters=25,
            rng_seed=config.rng_seed,
        )

    # stage 1: simplex exploration over support masks
    for support in masks:
        if mode != "positive" and len(support) > 3:
            continue  # large subspaces go straight to the flattening stage
        dim = len(support) * (2 if mode == "general" else 1)
        if len(support) == 1:
            n_restarts = 1  # no shape freedom: one exact evaluation
        elif mode == "positive":
            n_restarts = config.outer_restarts
        else:
            n_restarts = max(1, config.outer_restarts // 4)
        for _ in range(n_restarts):
            rng = np.random.default_rng(config.rng_seed + restart_index)
            x0 = rng.normal(size=dim)
            if mode == "positive":
                x0 = np.abs(x0)
            if len(support) == 1:
                amps = _params_to_amps(x0, n, support, mode)
                record(positive_max_amplitude(np.abs(amps)), amps)
                continue
            res = minimize(
                nm_objective,
                x0,
                args=(support,),
                method="Nelder-Mead",
                options={"maxfev": 150 * dim, "xatol": 1e-10, "fatol": 1e-12},
            )
            amps = _params_to_amps(res.x, n, support, mode)
            if mode == "positive":
                val = float(res.fun)
            else:
                val = _surface_height(n, amps, config.rng_seed)
            record(val, amps)

    # stage 2: uniform-height refinement
    n_refine = min(4, config.outer_restarts)
    if mode == "positive":
        schedule = _positive_restarts(
            n, config.rot_order, n_refine, config.rng_seed, restart_index
        )
    else:
        pos = _positive_restarts(
            n, config.rot_order, 1, config.rng_seed, restart_index + 1000
        )
        schedule = _complex_restarts(
            n, mode, config.rot_order, n_refine, config.rng_seed,
            restart_index, pos[0][1],
        )
    for val, amps in schedule:
        record(val, amps)

    assert best_amps is not None
    agreeing = int(sum(1 for v in finals if abs(v - best_val) <= config.outer_tol))
    state = normalize(SymmetricState(n, np.asarray(best_amps, dtype=complex)))
    inner = config.inner
    if mode == "positive" and not inner.meridian_only:
        from dataclasses import replace as _replace

        inner = _replace(inner, meridian_only=True)
    try:
        cppset = find_cpps(state, inner)
    except SolverError as exc:
        raise SolverError(f"final candidate failed to solve: {exc}") from exc
    fmax2 = cppset.max_value**2
    return SearchResult(
        state=state,
        points=state_to_points(state),
        entanglement=EntanglementValue(
            eg_log2=float(-np.log2(fmax2)), eg_linear=float(1.0 - fmax2)
        ),
        restarts_agreeing=agreeing,
        history=tuple(history),
    )


# ----------------------------------------------------------------------
# catalog states
# ----------------------------------------------------------------------

def _cube_vertices() -> np.ndarray:
    """Cube vertices over the face centers of the octahedron whose own
    vertices sit at the poles and at equatorial azimuths pi/4 + k pi/2."""
    z = 1.0 / np.sqrt(3.0)
    r = np.sqrt(2.0 / 3.0)
    phis = np.pi / 2.0 * np.arange(4)
    top = np.column_stack([r * np.cos(phis), r * np.sin(phis), np.full(4, z)])
    bottom = np.column_stack([r * np.cos(phis), r * np.sin(phis), np.full(4, -z)])
    return np.vstack([top, bottom])


def platonic_state(name: str) -> SymmetricState:
    """Symmetric state whose Majorana points form the named solid.

    Coefficient vectors are exact for the tetrahedron, octahedron,
    icosahedron, and dodecahedron; the cube state is built by lifting
    the eight cube vertices (aligned with the octahedron's faces)
    through the point-to-state map.
    """
    if name == "cube":
        verts = _cube_vertices()
        theta = np.arccos(np.clip(verts[:, 2], -1.0, 1.0))
        phi = np.arctan2(verts[:, 1], verts[:, 0]) % (2 * np.pi)
        pts = MajoranaPoints(
            8, tuple(BlochPoint(float(t), float(p)) for t, p in zip(theta, phi))
        )
        return points_to_state(pts)
    try:
        n, coeffs = _PLATONIC_COEFFS[name]
    except KeyError:
        raise ValueError(
            f"unknown solid {name!r}; expected one of "
            "tetrahedron, octahedron, cube, icosahedron, dodecahedron"
        ) from None
    amps = np.zeros(n + 1, dtype=complex)
    for k, v in coeffs.items():
        amps[k] = v
    return normalize(SymmetricState(n, amps))


# ----------------------------------------------------------------------
# classical point configurations
# ----------------------------------------------------------------------

def coulomb_energy(vectors: np.ndarray) -> float:
    """Sum of inverse pairwise chord distances of unit vectors."""
    diff = vectors[:, None, :] - vectors[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=2))
    iu = np.triu_indices(len(vectors), 1)
    return float((1.0 / dist[iu]).sum())


def min_pairwise_angle(vectors: np.ndarray) -> float:
    """Smallest pairwise geodesic angle of a unit-vector set, radians."""
    cos = np.clip(vectors @ vectors.T, -1.0, 1.0)
    iu = np.triu_indices(len(vectors), 1)
    return float(np.arccos(cos[iu]).min())


def _project_grad(x: np.ndarray, grad_u: np.ndarray) -> np.ndarray:
    """Chain rule through the normalization u = x / |x|."""
    norms = np.linalg.norm(x, axis=1, keepdims=True)
    u = x / norms
    radial = (grad_u * u).sum(axis=1, keepdims=True)
    return (grad_u - radial * u) / norms


def _thomson_objective(flat: np.ndarray, n: int):
    x = flat.reshape(n, 3)
    norms = np.linalg.norm(x, axis=1, keepdims=True)
    u = x / norms
    diff = u[:, None, :] - u[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=2))
    np.fill_diagonal(dist, np.inf)
    energy = 0.5 * (1.0 / dist).sum()
    grad_u = -(diff / dist[:, :, None] ** 3).sum(axis=1)
    return energy, _project_grad(x, grad_u).ravel()


def _toth_objective(flat: np.ndarray, n: int, temp: float):
    """Negated soft-min of pairwise angles (smooth packing surrogate)."""
    x = flat.reshape(n, 3)
    norms = np.linalg.norm(x, axis=1, keepdims=True)
    u = x / norms
    cos = np.clip(u @ u.T, -1.0, 1.0)
    ang = np.arccos(cos)
    iu = np.triu_indices(n, 1)
    a = ang[iu]
    amin = a.min()
    weights = np.exp(-(a - amin) / temp)
    z = weights.sum()
    value = amin - temp * np.log(z)
    w_full = np.zeros((n, n))
    w_full[iu] = weights / z
    w_full += w_full.T
    sin = np.sqrt(np.maximum(1.0 - cos**2, 1e-18))
    coef = w_full / sin
    grad_u = (coef[:, :, None] * u[None, :, :]).sum(axis=1)
    return -value, _project_grad(x, grad_u).ravel()


def _canonical_orientation(u: np.ndarray) -> np.ndarray:
    """Rotate a point set so point one sits at the north pole and point
    two on the phi = 0 meridian; deterministic for any input order."""
    order = np.lexsort((u[:, 1], u[:, 0], -u[:, 2]))
    first = u[order[0]]
    axis = np.cross(first, [0.0, 0.0, 1.0])
    s = np.linalg.norm(axis)
    c = float(first[2])
    if s < 1e-15:
        rot1 = np.eye(3) if c > 0 else np.diag([1.0, -1.0, -1.0])
    else:
        k = axis / s
        kmat = np.array(
            [[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]]
        )
        # Rodrigues rotation taking `first` to the +z axis
        rot1 = np.eye(3) + kmat * s + kmat @ kmat * (1.0 - c)
    v = u @ rot1.T
    xy = np.hypot(v[:, 0], v[:, 1])
    off_axis = np.flatnonzero(xy > 1e-9)
    if off_axis.size:
        theta = np.arccos(np.clip(v[:, 2], -1, 1))
        phi = np.arctan2(v[:, 1], v[:, 0]) % (2 * np.pi)
        sub = off_axis[np.lexsort((phi[off_axis], theta[off_axis]))]
        g = -phi[sub[0]]
        rot2 = np.array(
            [[np.cos(g), -np.sin(g), 0.0], [np.sin(g), np.cos(g), 0.0], [0.0, 0.0, 1.0]]
        )
        v = v @ rot2.T
    return v


def classical_points(config: ClassicalConfig) -> MajoranaPoints:
    """Optimized point configuration for the selected classical problem.

    Thomson: quasi-Newton descent of the pairwise inverse-distance
    energy with analytic gradients.  Packing: soft-min of the pairwise
    angles, annealed over a fixed geometric temperature schedule so the
    smooth surrogate approaches the true min-angle objective.  Restarts
    start from seeded random configurations; the best final value wins
    and the output is canonically oriented.
    """
    n = config.n
    best: np.ndarray | None = None
    best_score = np.inf
    for r in range(config.restarts):
        rng = np.random.default_rng(config.rng_seed + r)
        x = rng.normal(size=(n, 3))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        if config.problem == "thomson":
            res = minimize(
                _thomson_objective,
                x.ravel(),
                args=(n,),
                jac=True,
                method="L-BFGS-B",
                options={"maxiter": 2000, "gtol": config.step_tol, "ftol": 1e-16},
            )
            score = float(res.fun)
            x = res.x.reshape(n, 3)
        else:
            temp = 0.5
            flat = x.ravel()
            for _ in range(12):
                res = minimize(
                    _toth_objective,
                    flat,
                    args=(n, temp),
                    jac=True,
                    method="L-BFGS-B",
                    options={"maxiter": 500, "gtol": config.step_tol, "ftol": 1e-16},
                )
                flat = res.x
                temp *= 0.5
            x = flat.reshape(n, 3)
            u = x / np.linalg.norm(x, axis=1, keepdims=True)
            score = -min_pairwise_angle(u)
        if score < best_score:
            best_score = score
            best = x
    assert best is not None
    u = best / np.linalg.norm(best, axis=1, keepdims=True)
    v = _canonical_orientation(u)
    theta = np.arccos(np.clip(v[:, 2], -1.0, 1.0))
    phi = np.arctan2(v[:, 1], v[:, 0]) % (2 * np.pi)
    pts = [BlochPoint(float(t), float(p)) for t, p in zip(theta, phi)]
    pts.sort(key=lambda p: (p.theta, p.phi))
    return MajoranaPoints(n, tuple(pts))


def evaluate_candidate(points: MajoranaPoints, inner: SolverConfig) -> SearchResult:
    """Entanglement of the symmetric state carried by a point set.

    Lifts the points to their state, runs the solver, and wraps the
    outcome as a single-sample search result so classical baselines and
    searched optima share a common report shape.
    """
    state = points_to_state(points)
    cppset = find_cpps(state, inner)
    fmax2 = cppset.max_value**2
    eg = float(-np.log2(fmax2))
    return SearchResult(
        state=state,
        points=points,
        entanglement=EntanglementValue(eg_log2=eg, eg_linear=float(1.0 - fmax2)),
        restarts_agreeing=1,
        history=((0, eg),),
    )
