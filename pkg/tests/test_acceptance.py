"""Release gate: ten numbered checks with pinned tolerances.

Run with ``pytest -v tests/test_acceptance.py`` — each criterion is one
test, so the verbose report gives exactly one PASS/FAIL line per
criterion.  Search-based criteria use fixed seeds; reference decimals
come from the bundled fixture table.  Heuristic stretch rows (large-n
searches) are one-sided: beating the reference value passes, and an
unconverged status is reported without failing the gate.
"""
from __future__ import annotations

import time
from itertools import combinations
from math import ceil, log2

import numpy as np
import pytest

from majent.analysis import (
    dicke_entanglement,
    hausdorff_angle,
    moment_report,
)
from majent.cpp_solver import (
    SolverConfig,
    find_cpps,
    positive_max_amplitude,
    verify_cpp_structure,
)
from majent.io import load_reference_table
from majent.majorana import integrate_amplitude_sq, points_to_state, state_to_points
from majent.maxsearch import (
    ClassicalConfig,
    SearchConfig,
    classical_points,
    evaluate_candidate,
    min_pairwise_angle,
    platonic_state,
    search_max,
)
from majent.mbqc import dicke_family_asymptotic, eta_threshold
from majent.states import SymmetricState, normalize

from conftest import random_state

_REF = load_reference_table()


def _cosine_spectrum(v: np.ndarray) -> np.ndarray:
    cos = np.clip(v @ v.T, -1.0, 1.0)
    return np.sort(cos[~np.eye(len(v), dtype=bool)])


def test_criterion_01_closed_form_fixtures():
    """Bell, three-qubit cases and the whole closed-form column, < 1e-9."""
    assert abs(dicke_entanglement(2, 1) - 1.0) < 1e-9  # Bell
    ghz3 = normalize(SymmetricState(3, np.array([1, 0, 0, 1], complex)))
    eg_ghz = -2.0 * log2(positive_max_amplitude(ghz3.amps.real))
    assert abs(eg_ghz - 1.0) < 1e-9
    assert abs(dicke_entanglement(3, 1) - log2(9.0 / 4.0)) < 1e-9  # W state
    for n in range(2, 13):
        cell = _REF[(n, "dicke")]
        assert abs(dicke_entanglement(n, n // 2) - cell.value) < 1e-9, f"n={n}"
    print("criterion 1: PASS — closed forms within 1e-9")


def test_criterion_02_platonic_entanglement():
    """Numeric E_g of the three exact solids within 1e-7 of closed form."""
    targets = {
        "tetrahedron": log2(3.0),
        "octahedron": log2(9.0 / 2.0),
        "icosahedron": log2(243.0 / 28.0),
    }
    config = SolverConfig(n_starts=400, rng_seed=5)
    for name, want in targets.items():
        got = -2.0 * log2(find_cpps(platonic_state(name), config).max_value)
        assert abs(got - want) < 1e-7, f"{name}: {got} vs {want}"
    print("criterion 2: PASS — platonic E_g within 1e-7")


def test_criterion_03_cpp_geometry():
    """CPP sets against the dual-vertex predictions, Hausdorff < 1e-5."""
    tetra = platonic_state("tetrahedron")
    cpps = find_cpps(tetra, SolverConfig(n_starts=300, rng_seed=5))
    assert len(cpps.cpps) == 4
    mp = state_to_points(tetra).unit_vectors()
    got = np.array([p.unit_vector() for p in cpps.cpps])
    assert hausdorff_angle(got, mp) < 1e-6

    pairs = [
        ("octahedron", "cube", 8, 400),
        ("icosahedron", "dodecahedron", 20, 900),
        ("dodecahedron", "icosahedron", 12, 1500),
    ]
    for name, dual, count, starts in pairs:
        state = platonic_state(name)
        cpps = find_cpps(state, SolverConfig(n_starts=starts, rng_seed=5))
        assert len(cpps.cpps) == count, f"{name}: {len(cpps.cpps)} CPPs"
        got = np.array([p.unit_vector() for p in cpps.cpps])
        want = state_to_points(platonic_state(dual)).unit_vectors()
        dist = hausdorff_angle(got, want)
        assert dist < 1e-5, f"{name} vs {dual} vertices: {dist:.2e}"
    print("criterion 3: PASS — CPP geometry within 1e-5")


def test_criterion_04_quadrature_identity():
    """Sphere integral of f^2 equals 4 pi/(n+1), relative error < 1e-8."""
    worst = 0.0
    for n in range(1, 13):
        rng = np.random.default_rng(4000 + n)
        expected = 4.0 * np.pi / (n + 1)
        for _ in range(100):
            got = integrate_amplitude_sq(random_state(n, rng))
            worst = max(worst, abs(got - expected) / expected)
    assert worst < 1e-8, f"worst relative error {worst:.2e}"
    print(f"criterion 4: PASS — worst quadrature error {worst:.2e}")


def test_criterion_05_roundtrip_fidelity():
    """1000 coefficient -> point -> coefficient trips, fidelity >= 1 - 1e-8."""
    rng = np.random.default_rng(5000)
    worst = 1.0
    accepted = 0
    while accepted < 1000:
        n = int(rng.integers(1, 13))
        state = random_state(n, rng)
        points = state_to_points(state)
        v = points.unit_vectors()
        if n > 1:
            sep = min(
                float(np.arccos(np.clip(v[i] @ v[j], -1, 1)))
                for i, j in combinations(range(n), 2)
            )
            if sep <= 1e-3:
                continue
        fidelity = abs(np.vdot(state.amps, points_to_state(points).amps))
        worst = min(worst, fidelity)
        accepted += 1
    assert worst >= 1.0 - 1e-8, f"worst fidelity {worst:.12f}"
    print(f"criterion 5: PASS — worst fidelity {worst:.12f}")


def test_criterion_06_search_reproduction():
    """Fixed-seed search table: required rows at 1e-4, stretch rows one-sided 1e-3."""
    t0 = time.perf_counter()
    seed, restarts = 42, 8

    def cell(n, mode, n_restarts, rot_order=None):
        config = SearchConfig(
            n=n,
            mode=mode,
            rot_order=rot_order,
            outer_restarts=n_restarts,
            inner=SolverConfig(meridian_only=(mode == "positive"), rng_seed=seed),
            rng_seed=seed,
        )
        result = search_max(config)
        return result.entanglement.eg_log2, result.restarts_agreeing

    notes = []
    for n in range(4, 9):  # required rows
        val, agreeing = cell(n, "positive", restarts)
        ref = _REF[(n, "positive")].value
        assert agreeing >= 3, f"n={n}: only {agreeing} agreeing restarts"
        assert abs(val - ref) <= 1e-4, f"n={n}: |{val} - {ref}| > 1e-4"
        notes.append(f"n{n}:{val - ref:+.1e}")

    stretch = []
    for n in range(9, 13):  # stretch rows, one-sided
        val, agreeing = cell(n, "positive", restarts)
        ref = _REF[(n, "positive")].value
        status = "ok" if agreeing >= 3 else "UNCONVERGED"
        passed = val >= ref - 1e-3
        stretch.append(f"pos n{n}:{val - ref:+.1e} {status}")
        assert passed or status == "UNCONVERGED", f"positive n={n}: {val} vs {ref}"
    for n in (10, 11, 12):
        rot = 5 if n == 12 else None
        val, agreeing = cell(n, "general", max(2, restarts // 2), rot_order=rot)
        ref = _REF[(n, "general")].value
        status = "ok" if agreeing >= 3 else "UNCONVERGED"
        passed = val >= ref - 1e-3
        stretch.append(f"gen n{n}:{val - ref:+.1e} {status}")
        assert passed or status == "UNCONVERGED", f"general n={n}: {val} vs {ref}"

    elapsed = time.perf_counter() - t0
    assert elapsed < 600.0, f"criterion 6 exceeded its budget: {elapsed:.0f} s"
    print(
        "criterion 6: PASS — required " + " ".join(notes)
        + "; stretch " + " ".join(stretch) + f"; {elapsed:.0f} s"
    )


def test_criterion_07_classical_baselines():
    """Energy minimizers recover solids; the pyramid is not the optimum."""
    # pairwise-cosine spectra are rotation-invariant signatures
    platonic_spectra = {
        4: np.full(12, -1.0 / 3.0),
        6: np.sort(np.concatenate([np.full(6, -1.0), np.zeros(24)])),
        12: None,  # icosahedron, built below
    }
    ico = state_to_points(platonic_state("icosahedron")).unit_vectors()
    platonic_spectra[12] = _cosine_spectrum(ico)
    for n, want in platonic_spectra.items():
        pts = classical_points(ClassicalConfig(n=n, problem="thomson", restarts=16))
        got = _cosine_spectrum(pts.unit_vectors())
        err = float(np.abs(got - want).max())
        assert err < 1e-5, f"thomson n={n}: spectrum error {err:.2e}"

    # n = 5: two poles plus an equatorial triangle
    pts5 = classical_points(ClassicalConfig(n=5, problem="thomson", restarts=16))
    bipyramid = np.sort(
        np.concatenate([np.full(2, -1.0), np.full(6, -0.5), np.zeros(12)])
    )
    err5 = float(np.abs(_cosine_spectrum(pts5.unit_vectors()) - bipyramid).max())
    assert err5 < 1e-5, f"thomson n=5 is not a trigonal bipyramid: {err5:.2e}"
    result = evaluate_candidate(pts5, SolverConfig(n_starts=300, rng_seed=5))
    assert result.entanglement.eg_log2 < 1.742268948 - 1e-3

    # n = 8: the best packing beats the cube's minimal angle
    pts8 = classical_points(ClassicalConfig(n=8, problem="toth", restarts=16))
    cube_angle = float(np.arccos(1.0 / 3.0))
    got_angle = min_pairwise_angle(pts8.unit_vectors())
    assert got_angle > cube_angle + 1e-3, f"{got_angle} vs cube {cube_angle}"
    print(f"criterion 7: PASS — spectra within 1e-5, packing angle {got_angle:.6f}")


def test_criterion_08_structure_lemmas():
    """Meridians, count bounds and mirror symmetry over random states."""
    t0 = time.perf_counter()
    config = SolverConfig(n_starts=160, meridian_only=True, rng_seed=5)
    checked = 0
    for n in range(4, 9):
        rng = np.random.default_rng(8000 + n)
        for _ in range(200):
            state = random_state(n, rng, mode="positive")
            rep = verify_cpp_structure(state, find_cpps(state, config))
            assert rep.meridians_ok, f"n={n}: CPP off the allowed meridians"
            if rep.cpp_bound is not None:
                assert rep.cpp_count <= rep.cpp_bound, (
                    f"n={n}: {rep.cpp_count} CPPs > bound {rep.cpp_bound} "
                    f"(class {rep.state_class})"
                )
            checked += 1
        for _ in range(200):
            state = random_state(n, rng, mode="real")
            v = state_to_points(state).unit_vectors()
            mirrored = v * np.array([1.0, -1.0, 1.0])
            assert hausdorff_angle(v, mirrored) < 1e-8, f"n={n}: MP set not mirror-symmetric"
            checked += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 120.0, f"criterion 8 exceeded its budget: {elapsed:.0f} s"
    print(f"criterion 8: PASS — {checked} states, {elapsed:.0f} s")


def test_criterion_09_anticoherence_falsification():
    """The pyramid's spin vector is visibly off-origin; the solids' vanish."""
    pyramid = normalize(
        SymmetricState(5, np.array([0.547, 0, 0, 0, 0.837, 0], dtype=complex))
    )
    spin = np.linalg.norm(moment_report(state_to_points(pyramid)).spin_vector)
    assert spin > 0.01, f"pyramid spin {spin}"
    for name in ("octahedron", "icosahedron"):
        s = np.linalg.norm(moment_report(state_to_points(platonic_state(name))).spin_vector)
        assert s < 1e-10, f"{name} spin {s:.2e}"
    print(f"criterion 9: PASS — pyramid spin {spin:.4f}, solids < 1e-10")


def test_criterion_10_mbqc_thresholds():
    """The k = 1 threshold and the asymptote of the single-excitation family."""
    t0 = time.perf_counter()
    rep = eta_threshold(1)
    assert 0.001 / 3.0 <= rep.eta_threshold <= 0.001 * 3.0, rep.eta_threshold
    finite = 1.0 - 2.0 ** (-dicke_entanglement(10**4, 1))
    target = 1.0 - 1.0 / np.e
    assert abs(finite - target) < 1e-3
    assert abs(dicke_family_asymptotic(1) - target) < 1e-12
    assert time.perf_counter() - t0 < 1.0
    print(f"criterion 10: PASS — eta* {rep.eta_threshold:.3e}, asymptote gap {abs(finite - target):.1e}")
