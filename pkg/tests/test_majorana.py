"""Point map, amplitude function and the quadrature identity.

The amplitude function is checked against an explicit full-tensor
overlap for small n — the definition, with no combinatorial shortcuts —
so everything downstream (point map, solver, search) rests on an
independently verified base.
"""
from __future__ import annotations

from itertools import product
from math import comb

import numpy as np
import pytest

from majent.analysis import hausdorff_angle
from majent.majorana import (
    MajoranaPoints,
    amplitude,
    amplitude_grid,
    integrate_amplitude_sq,
    majorana_polynomial,
    normalization_K,
    overlap_product,
    points_to_state,
    state_to_points,
)
from majent.states import BlochPoint, SymmetricState, make_dicke, normalize, rotate_state

from conftest import random_state


def _full_tensor_amplitude(state: SymmetricState, theta: float, phi: float) -> float:
    """|<lambda^(x)n | psi>| by brute-force enumeration of all 2^n bitstrings."""
    n = state.n
    lam = np.array([np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)])
    total = 0.0j
    for bits in product((0, 1), repeat=n):
        k = sum(bits)
        coeff = state.amps[k] / np.sqrt(comb(n, k))
        bra = np.prod([np.conj(lam[b]) for b in bits])
        total += bra * coeff
    return abs(total)


class TestAmplitude:
    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_matches_full_tensor_overlap(self, n):
        rng = np.random.default_rng(100 + n)
        for _ in range(8):
            state = random_state(n, rng)
            theta = rng.uniform(0.0, np.pi)
            phi = rng.uniform(0.0, 2.0 * np.pi)
            want = _full_tensor_amplitude(state, theta, phi)
            got = amplitude(state, BlochPoint(theta, phi))
            assert got == pytest.approx(want, abs=1e-12)

    def test_grid_matches_pointwise(self):
        state = random_state(7, np.random.default_rng(7))
        thetas = np.linspace(0.0, np.pi, 13)
        phis = np.linspace(0.0, 2.0 * np.pi, 17, endpoint=False)
        grid = amplitude_grid(state, thetas, phis)
        assert grid.shape == (13, 17)
        for i in (0, 5, 12):
            for j in (0, 8, 16):
                want = amplitude(state, BlochPoint(thetas[i], phis[j]))
                assert grid[i, j] == pytest.approx(want, abs=1e-13)

    def test_poles_are_exact(self):
        state = random_state(6, np.random.default_rng(8))
        north = amplitude(state, BlochPoint(0.0, 0.0))
        south = amplitude(state, BlochPoint(np.pi, 0.0))
        assert north == pytest.approx(abs(state.amps[0]), abs=1e-15)
        assert south == pytest.approx(abs(state.amps[6]), abs=1e-15)

    def test_bounded_by_one(self):
        rng = np.random.default_rng(9)
        for n in (2, 6, 12):
            state = random_state(n, rng)
            grid = amplitude_grid(
                state, np.linspace(0, np.pi, 40), np.linspace(0, 2 * np.pi, 80)
            )
            assert float(grid.max()) <= 1.0 + 1e-12


class TestPointMap:
    def test_dicke_pole_multiplicities(self):
        # k excitations put n-k points at the north pole, k at the south
        points = state_to_points(make_dicke(5, 2))
        thetas = sorted(p.theta for p in points.points)
        assert np.allclose(thetas[:3], 0.0, atol=1e-12)
        assert np.allclose(thetas[3:], np.pi, atol=1e-12)

    def test_point_count_always_n(self):
        rng = np.random.default_rng(31)
        for n in (1, 4, 9, 12):
            state = random_state(n, rng)
            assert len(state_to_points(state).points) == n

    def test_roundtrip_fidelity(self):
        rng = np.random.default_rng(32)
        for n in (2, 5, 8, 12):
            for _ in range(10):
                state = random_state(n, rng)
                rebuilt = points_to_state(state_to_points(state))
                fid = abs(np.vdot(state.amps, rebuilt.amps))
                assert fid >= 1.0 - 1e-9

    def test_points_roundtrip_positions(self):
        rng = np.random.default_rng(33)
        pts = MajoranaPoints(
            6,
            tuple(
                BlochPoint(rng.uniform(0.3, np.pi - 0.3), rng.uniform(0, 2 * np.pi))
                for _ in range(6)
            ),
        )
        recovered = state_to_points(points_to_state(pts))
        a = pts.unit_vectors()
        b = recovered.unit_vectors()
        assert hausdorff_angle(a, b) < 1e-7

    def test_rotation_covariance(self):
        """Rotating the state rotates every Majorana point the same way."""
        rng = np.random.default_rng(34)
        for n in (2, 5, 9):
            state = random_state(n, rng)
            v = rng.standard_normal(4)
            v /= np.linalg.norm(v)
            alpha, beta = v[0] + 1j * v[1], v[2] + 1j * v[3]
            u = np.array([[alpha, -np.conj(beta)], [beta, np.conj(alpha)]])
            pauli = [
                np.array([[0, 1], [1, 0]], complex),
                np.array([[0, -1j], [1j, 0]], complex),
                np.array([[1, 0], [0, -1]], complex),
            ]
            rot = np.zeros((3, 3))
            for i in range(3):
                m = u @ pauli[i] @ u.conj().T
                for j in range(3):
                    rot[j, i] = 0.5 * np.trace(pauli[j] @ m).real
            before = state_to_points(state).unit_vectors()
            after = state_to_points(rotate_state(state, alpha, beta)).unit_vectors()
            assert hausdorff_angle(after, before @ rot.T) < 1e-6

    def test_degree_drop_is_north_pole(self):
        # a_n = 0 removes the top coefficient; the lost root is the pole
        state = normalize(SymmetricState(3, np.array([1.0, 1.0, 1.0, 0.0], complex)))
        points = state_to_points(state)
        assert min(p.theta for p in points.points) < 1e-12

    def test_zero_state_rejected(self):
        with pytest.raises(ValueError):
            state_to_points(SymmetricState(2, np.zeros(3, complex)))


class TestPolynomial:
    def test_coefficients_weighted_by_root_binomial(self):
        state = random_state(6, np.random.default_rng(41))
        poly = majorana_polynomial(state)
        weights = np.sqrt([comb(6, k) for k in range(7)])
        np.testing.assert_allclose(poly.coeffs, state.amps * weights, atol=1e-15)

    def test_to_state_inverts(self):
        state = random_state(5, np.random.default_rng(42))
        back = majorana_polynomial(state).to_state()
        np.testing.assert_allclose(back.amps, state.amps, atol=1e-15)


class TestProductForm:
    def test_overlap_product_matches_amplitude(self):
        rng = np.random.default_rng(51)
        for n in (2, 4, 8):
            state = random_state(n, rng)
            points = state_to_points(state)
            K = normalization_K(points)
            for _ in range(6):
                sigma = BlochPoint(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
                want = amplitude(state, sigma)
                got = overlap_product(points, K, sigma)
                assert got == pytest.approx(want, abs=1e-9)

    def test_zero_at_antipode_of_a_point(self):
        state = random_state(4, np.random.default_rng(52))
        points = state_to_points(state)
        K = normalization_K(points)
        antipode = points.points[0].antipode()
        assert overlap_product(points, K, antipode) == pytest.approx(0.0, abs=1e-9)

    def test_nonpositive_K_rejected(self):
        points = state_to_points(make_dicke(3, 1))
        with pytest.raises(ValueError):
            overlap_product(points, 0.0, BlochPoint(1.0, 1.0))


class TestQuadratureIdentity:
    """The sphere average of f^2 depends only on n, never on the state."""

    @pytest.mark.parametrize("n", list(range(1, 13)))
    def test_integral_value(self, n):
        rng = np.random.default_rng(60 + n)
        expected = 4.0 * np.pi / (n + 1)
        for _ in range(5):
            state = random_state(n, rng)
            got = integrate_amplitude_sq(state)
            assert abs(got - expected) / expected < 1e-10

    def test_holds_for_sparse_and_real_states(self):
        rng = np.random.default_rng(73)
        expected = 4.0 * np.pi / 9.0
        for mode in ("positive", "real"):
            state = random_state(8, rng, mode=mode)
            assert integrate_amplitude_sq(state) == pytest.approx(expected, rel=1e-10)
        assert integrate_amplitude_sq(make_dicke(8, 3)) == pytest.approx(
            expected, rel=1e-10
        )

    def test_quadrature_order_floor(self):
        with pytest.raises(ValueError):
            integrate_amplitude_sq(make_dicke(2, 1), n_theta=1)
