"""Outer entanglement search and classical point-configuration baselines.

Search results are heuristic, so everything is pinned against closed
forms and published reference decimals at search tolerance rather than
at machine precision, with fixed seeds throughout.
"""
from __future__ import annotations

from math import log2

import numpy as np
import pytest

from majent.analysis import dicke_entanglement, hausdorff_angle
from majent.cpp_solver import SolverConfig
from majent.majorana import state_to_points
from majent.maxsearch import (
    ClassicalConfig,
    SearchConfig,
    classical_points,
    coulomb_energy,
    evaluate_candidate,
    min_pairwise_angle,
    platonic_state,
    search_max,
    support_masks,
)
from majent.states import classify


def _fast_inner() -> SolverConfig:
    return SolverConfig(n_starts=200, meridian_only=True, rng_seed=7)


class TestSupportMasks:
    def test_full_range_always_present(self):
        masks = support_masks(6)
        assert tuple(range(7)) in masks

    def test_sorted_by_size(self):
        sizes = [len(m) for m in support_masks(8)]
        assert sizes == sorted(sizes)

    def test_rot_order_restriction(self):
        masks = support_masks(6, rot_order=3)
        assert set(masks) == {(0, 3, 6), (1, 4), (2, 5)}

    def test_residue_classes_cover_all_indices(self):
        for n in (5, 9):
            covered = set()
            for mask in support_masks(n):
                covered.update(mask)
            assert covered == set(range(n + 1))


class TestSearchConfigValidation:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n": 1},
            {"n": 4, "mode": "imaginary"},
            {"n": 4, "outer_restarts": 0},
            {"n": 4, "rot_order": 9},
            {"n": 4, "outer_tol": 0.0},
        ],
    )
    def test_bad_values_rejected(self, kwargs):
        with pytest.raises(ValueError):
            SearchConfig(**kwargs)


class TestPositiveSearch:
    """Small-n positive optima have known closed forms or decimals."""

    @pytest.mark.parametrize(
        "n,target",
        [(4, log2(3.0)), (5, 1.742268948), (6, log2(9.0 / 2.0))],
    )
    def test_known_optima(self, n, target):
        config = SearchConfig(
            n=n, mode="positive", outer_restarts=8, inner=_fast_inner(), rng_seed=42
        )
        result = search_max(config)
        assert result.entanglement.eg_log2 == pytest.approx(target, abs=1e-6)
        assert result.restarts_agreeing >= 3

    def test_five_qubit_coefficient_structure(self):
        # the optimum loads only the endpoints of a square pyramid
        config = SearchConfig(
            n=5, mode="positive", outer_restarts=8, inner=_fast_inner(), rng_seed=42
        )
        amps = np.abs(search_max(config).state.amps)
        assert amps[0] == pytest.approx(0.547, abs=2e-3)
        assert amps[4] == pytest.approx(0.837, abs=2e-3)
        assert np.all(amps[[1, 2, 3, 5]] < 1e-5)

    def test_seed_gauge_invariance(self):
        # a different seed rotates every initial simplex; the optimum is unchanged
        vals = []
        for seed in (42, 1234):
            config = SearchConfig(
                n=4, mode="positive", outer_restarts=6, inner=_fast_inner(), rng_seed=seed
            )
            vals.append(search_max(config).entanglement.eg_log2)
        assert abs(vals[0] - vals[1]) < 1e-7

    def test_never_below_best_dicke(self):
        for n in (4, 6, 8):
            config = SearchConfig(
                n=n, mode="positive", outer_restarts=4, inner=_fast_inner(), rng_seed=42
            )
            result = search_max(config)
            best_dicke = max(dicke_entanglement(n, k) for k in range(n + 1))
            assert result.entanglement.eg_log2 >= best_dicke - 1e-9

    def test_history_is_monotone(self):
        config = SearchConfig(
            n=5, mode="positive", outer_restarts=6, inner=_fast_inner(), rng_seed=42
        )
        hist = search_max(config).history
        vals = [v for _, v in hist]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))

    def test_result_state_is_positive_and_normalized(self):
        config = SearchConfig(
            n=6, mode="positive", outer_restarts=4, inner=_fast_inner(), rng_seed=42
        )
        result = search_max(config)
        assert result.state.is_normalized(1e-9)
        assert classify(result.state).is_positive
        assert len(result.points.points) == 6


class TestGeneralSearch:
    def test_real_mode_finds_octahedron(self):
        config = SearchConfig(n=6, mode="real", outer_restarts=8, rng_seed=42)
        result = search_max(config)
        assert result.entanglement.eg_log2 == pytest.approx(log2(4.5), abs=1e-6)

    def test_general_at_least_positive(self):
        pos = search_max(
            SearchConfig(n=5, mode="positive", outer_restarts=6, inner=_fast_inner(), rng_seed=42)
        )
        gen = search_max(SearchConfig(n=5, mode="general", outer_restarts=4, rng_seed=42))
        assert gen.entanglement.eg_log2 >= pos.entanglement.eg_log2 - 1e-6

    def test_upper_bound_proximity(self):
        # the maximum is known to track log2(n+1) within a bounded offset
        result = search_max(SearchConfig(n=6, mode="general", outer_restarts=4, rng_seed=42))
        assert result.entanglement.eg_log2 >= log2(7.0) - 0.775


class TestPlatonicStates:
    def test_octahedron_angle_spectrum(self):
        # rotation-invariant signature: 24 orthogonal pairs, 6 antipodal
        v = state_to_points(platonic_state("octahedron")).unit_vectors()
        cos = np.clip(v @ v.T, -1, 1)
        off = np.sort(cos[~np.eye(6, dtype=bool)])
        np.testing.assert_allclose(off[:6], -1.0, atol=1e-10)
        np.testing.assert_allclose(off[6:], 0.0, atol=1e-10)

    def test_tetrahedron_vertex_angles(self):
        v = state_to_points(platonic_state("tetrahedron")).unit_vectors()
        cos = np.clip(v @ v.T, -1, 1)
        off = cos[~np.eye(4, dtype=bool)]
        np.testing.assert_allclose(off, -1.0 / 3.0, atol=1e-10)

    def test_cube_angle_spectrum(self):
        # per vertex: 3 edges at cos 1/3, 3 face diagonals at -1/3, 1 antipode
        v = state_to_points(platonic_state("cube")).unit_vectors()
        assert v.shape == (8, 3)
        cos = np.sort(np.clip(v @ v.T, -1, 1)[~np.eye(8, dtype=bool)])
        np.testing.assert_allclose(cos[:8], -1.0, atol=1e-7)
        np.testing.assert_allclose(cos[8:32], -1.0 / 3.0, atol=1e-7)
        np.testing.assert_allclose(cos[32:], 1.0 / 3.0, atol=1e-7)

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError):
            platonic_state("hexagon")

    @pytest.mark.parametrize(
        "name,value",
        [
            ("tetrahedron", log2(3.0)),
            ("octahedron", log2(4.5)),
            ("icosahedron", log2(243.0 / 28.0)),
        ],
    )
    def test_entanglement_closed_forms(self, name, value):
        result = evaluate_candidate(
            state_to_points(platonic_state(name)), SolverConfig(n_starts=400, rng_seed=5)
        )
        assert result.entanglement.eg_log2 == pytest.approx(value, abs=1e-7)


class TestClassicalBaselines:
    def test_thomson_four_is_tetrahedral(self):
        pts = classical_points(ClassicalConfig(n=4, problem="thomson", restarts=8))
        v = pts.unit_vectors()
        cos = np.clip(v @ v.T, -1, 1)
        off = cos[~np.eye(4, dtype=bool)]
        np.testing.assert_allclose(off, -1.0 / 3.0, atol=1e-6)

    def test_thomson_six_is_octahedral(self):
        pts = classical_points(ClassicalConfig(n=6, problem="thomson", restarts=8))
        assert min_pairwise_angle(pts.unit_vectors()) == pytest.approx(
            np.pi / 2.0, abs=1e-6
        )

    def test_thomson_energy_is_known_for_five(self):
        pts = classical_points(ClassicalConfig(n=5, problem="thomson", restarts=12))
        assert coulomb_energy(pts.unit_vectors()) == pytest.approx(6.474691495, abs=1e-6)

    def test_toth_eight_beats_cube(self):
        pts = classical_points(ClassicalConfig(n=8, problem="toth", restarts=12))
        cube_angle = np.arccos(1.0 / 3.0)
        assert min_pairwise_angle(pts.unit_vectors()) > cube_angle + 1e-3

    def test_deterministic_given_seed(self):
        config = ClassicalConfig(n=7, problem="thomson", restarts=4, rng_seed=9)
        a = classical_points(config).unit_vectors()
        b = classical_points(config).unit_vectors()
        np.testing.assert_array_equal(a, b)

    def test_bad_config_rejected(self):
        with pytest.raises(ValueError):
            ClassicalConfig(n=4, problem="fejes")
        with pytest.raises(ValueError):
            ClassicalConfig(n=1)

    def test_pyramid_is_not_the_entanglement_optimum(self):
        # minimal Coulomb energy at n = 5 does not maximize entanglement
        pts = classical_points(ClassicalConfig(n=5, problem="thomson", restarts=12))
        result = evaluate_candidate(pts, SolverConfig(n_starts=300, rng_seed=5))
        assert result.entanglement.eg_log2 < 1.742268948 - 1e-3
