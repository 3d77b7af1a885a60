"""Command-line front end.

Every subcommand prints a human-readable report to stdout (or JSON with
``--json``), optionally writes the same payload to a file atomically
with ``--out``, and can render a PNG figure next to the delimited
output with ``--plot`` where a figure makes sense.  Timing goes to
stderr so stdout stays byte-deterministic for fixed inputs and seed.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 solver non-convergence.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from math import log2
from pathlib import Path

import numpy as np

from . import analysis, io, maxsearch, mbqc
from .cpp_solver import (
    SolverConfig,
    SolverError,
    detect_ring,
    find_cpps,
    verify_cpp_structure,
)
from .majorana import (
    amplitude_grid,
    integrate_amplitude_sq,
    points_to_state,
    state_to_points,
)
from .states import SymmetricState, classify, make_dicke, normalize

__all__ = ["main"]


# ----------------------------------------------------------------------
# small helpers
# ----------------------------------------------------------------------

def _resolve_threads(args) -> int:
    if getattr(args, "threads", None) is not None:
        return max(1, args.threads)
    env = os.environ.get("MAJ_ENT_THREADS", "")
    if env.strip().isdigit():
        return max(1, int(env))
    return 1


def _kv_text(pairs: list[tuple[str, str]]) -> str:
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k:<{width}} = {v}" for k, v in pairs) + "\n"


def _emit(args, text: str) -> None:
    """Send the payload to stdout, and to --out when given."""
    if args.out:
        io.write_text_atomic(args.out, text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _json_payload(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _plot_path(args, stem: str) -> Path:
    if args.out:
        return Path(args.out).with_suffix(".png")
    return Path(f"{stem}.png")


def _read_state(args) -> SymmetricState:
    state, _ = io.read_state_file(args.state_file)
    if getattr(args, "normalize", False):
        state = normalize(state)
    return state


def _solver_config(args) -> SolverConfig:
    return SolverConfig(
        n_starts=getattr(args, "starts", 400),
        meridian_only=getattr(args, "meridian", False),
        rng_seed=args.seed,
    )


def _random_state(n: int, rng: np.random.Generator, kind: str = "general") -> SymmetricState:
    amps = rng.normal(size=n + 1) + (
        1j * rng.normal(size=n + 1) if kind == "general" else 0.0
    )
    if kind == "positive":
        amps = np.abs(amps)
    return normalize(SymmetricState(n, amps.astype(complex)))


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_ent(args) -> int:
    state = _read_state(args)
    config = _solver_config(args)
    cppset = detect_ring(state, find_cpps(state, config, _resolve_threads(args)), config)
    fmax2 = cppset.max_value**2
    eg = -log2(fmax2)
    if args.as_json:
        doc = {
            "eg_log2": eg,
            "eg_linear": 1.0 - fmax2,
            "max_value": cppset.max_value,
            "cpps": [[p.theta, p.phi] for p in cppset.cpps],
            "is_ring": cppset.is_ring,
            "ring_theta": cppset.ring_theta,
            "manifest": io.make_manifest("ent", config, args.seed),
        }
        _emit(args, _json_payload(doc))
    else:
        pairs = [
            ("Eg", f"{eg:.9f}"),
            ("EG_linear", f"{1.0 - fmax2:.9f}"),
            ("max_f", f"{cppset.max_value:.9f}"),
            ("cpps", str(len(cppset.cpps))),
        ]
        if cppset.is_ring:
            pairs.append(("ring_theta", f"{cppset.ring_theta:.17g}"))
        _emit(args, _kv_text(pairs))
    if args.plot:
        from . import plots

        plots.save_amplitude_heatmap(state, _plot_path(args, "majent-ent"), cppset.cpps)
    return 0


def cmd_cpps(args) -> int:
    state = _read_state(args)
    config = _solver_config(args)
    cppset = detect_ring(state, find_cpps(state, config, _resolve_threads(args)), config)
    if args.as_json:
        doc = {
            "format": "cpps",
            "n": state.n,
            "points": [[p.theta, p.phi] for p in cppset.cpps],
            "max_value": cppset.max_value,
            "is_ring": cppset.is_ring,
            "ring_theta": cppset.ring_theta,
            "manifest": io.make_manifest("cpps", config, args.seed),
        }
        _emit(args, _json_payload(doc))
    else:
        lines = [f"{p.theta:.17g} {p.phi:.17g}" for p in cppset.cpps]
        if cppset.is_ring:
            lines.append(f"# ring at theta = {cppset.ring_theta:.17g}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_points(args) -> int:
    state = _read_state(args)
    points = state_to_points(state)
    manifest = io.make_manifest("points", None, args.seed)
    if args.as_json or args.out:
        _emit(args, io.render_points_json(points, manifest))
    else:
        _emit(args, "\n".join(f"{p.theta:.17g} {p.phi:.17g}" for p in points.points) + "\n")
    if args.plot:
        from . import plots

        plots.save_points_figure(points, _plot_path(args, "majent-points"))
    return 0


def cmd_state(args) -> int:
    points, _ = io.read_points_file(args.points_file)
    state = points_to_state(points)
    manifest = io.make_manifest("state", None, args.seed)
    _emit(args, io.render_state_json(state, manifest))
    return 0


def cmd_dicke(args) -> int:
    eg = analysis.dicke_entanglement(args.n, args.k)
    cpp = analysis.dicke_cpp(args.n, args.k)
    if args.as_json:
        doc = {
            "n": args.n,
            "k": args.k,
            "eg_log2": eg,
            "eg_linear": 1.0 - 2.0**-eg,
            "cpp_theta": cpp.theta,
            "manifest": io.make_manifest("dicke", {"n": args.n, "k": args.k}, args.seed),
        }
        _emit(args, _json_payload(doc))
    else:
        _emit(
            args,
            _kv_text(
                [("Eg", f"{eg:.9f}"), ("cpp_theta", f"{cpp.theta:.17g}")]
            ),
        )
    return 0


def cmd_bounds(args) -> int:
    rep = analysis.entanglement_bounds(args.n)
    if args.as_json:
        doc = {
            "n": rep.n,
            "dicke_lower": rep.dicke_lower,
            "stirling_lower": rep.stirling_lower,
            "upper": rep.upper,
            "general_lower": rep.general_lower,
            "general_upper": rep.general_upper,
            "manifest": io.make_manifest("bounds", {"n": args.n}, args.seed),
        }
        _emit(args, _json_payload(doc))
    else:
        _emit(
            args,
            _kv_text(
                [
                    ("n", str(rep.n)),
                    ("dicke_lower", f"{rep.dicke_lower:.9f}"),
                    ("stirling_lower", f"{rep.stirling_lower:.9f}"),
                    ("upper", f"{rep.upper:.9f}"),
                    ("general_lower", f"{rep.general_lower:.9f}"),
                    ("general_upper", f"{rep.general_upper:.9f}"),
                ]
            ),
        )
    return 0


def cmd_moments(args) -> int:
    try:
        points, _ = io.read_points_file(args.input_file)
    except io.FileFormatError:
        state, _ = io.read_state_file(args.input_file)
        if getattr(args, "normalize", False):
            state = normalize(state)
        points = state_to_points(state)
    rep = analysis.moment_report(points)
    spin_norm = float(np.linalg.norm(rep.spin_vector))
    if args.as_json:
        doc = {
            "spin_vector": list(rep.spin_vector),
            "spin_norm": spin_norm,
            "second_moment_deviation": rep.second_moment_deviation,
            "anticoherent_order1": rep.is_anticoherent(),
            "design_t2": rep.is_design(2),
            "manifest": io.make_manifest("moments", None, args.seed),
        }
        _emit(args, _json_payload(doc))
    else:
        sv = ", ".join(f"{x:.9f}" for x in rep.spin_vector)
        _emit(
            args,
            _kv_text(
                [
                    ("spin_vector", f"({sv})"),
                    ("spin_norm", f"{spin_norm:.9f}"),
                    ("second_moment_deviation", f"{rep.second_moment_deviation:.9f}"),
                    ("anticoherent_order1", str(rep.is_anticoherent()).lower()),
                    ("design_t2", str(rep.is_design(2)).lower()),
                ]
            ),
        )
    return 0


def cmd_duality(args) -> int:
    state_a, _ = io.read_state_file(args.state_a)
    state_b, _ = io.read_state_file(args.state_b)
    if getattr(args, "normalize", False):
        state_a, state_b = normalize(state_a), normalize(state_b)
    config = _solver_config(args)
    rep = analysis.duality_report(state_a, state_b, config)
    if args.as_json:
        doc = {
            "mp_a_vs_cpp_b": rep.mp_a_vs_cpp_b,
            "cpp_a_vs_mp_b": rep.cpp_a_vs_mp_b,
            "dual_pair": rep.is_dual_pair,
            "manifest": io.make_manifest("duality", config, args.seed),
        }
        _emit(args, _json_payload(doc))
    else:
        _emit(
            args,
            _kv_text(
                [
                    ("H(MPa, CPPb)", f"{rep.mp_a_vs_cpp_b:.3e}"),
                    ("H(CPPa, MPb)", f"{rep.cpp_a_vs_mp_b:.3e}"),
                    ("dual_pair", str(rep.is_dual_pair).lower()),
                ]
            ),
        )
    return 0


def cmd_search(args) -> int:
    inner = SolverConfig(
        n_starts=args.starts,
        meridian_only=args.mode == "positive",
        rng_seed=args.seed,
    )
    config = maxsearch.SearchConfig(
        n=args.n,
        mode=args.mode,
        rot_order=args.rot_order,
        outer_restarts=args.restarts,
        outer_tol=args.tol,
        inner=inner,
        rng_seed=args.seed,
    )
    result = maxsearch.search_max(config)
    status = "ok" if result.restarts_agreeing >= 3 else "UNCONVERGED"
    manifest = io.make_manifest("search", config, args.seed)
    if args.out:
        io.write_text_atomic(args.out, io.render_state_json(result.state, manifest))
        print(f"wrote {args.out}", file=sys.stderr)
    if args.as_json:
        doc = {
            "eg_log2": result.entanglement.eg_log2,
            "eg_linear": result.entanglement.eg_linear,
            "restarts_agreeing": result.restarts_agreeing,
            "status": status,
            "amps": [[a.real, a.imag] for a in result.state.amps],
            "points": [[p.theta, p.phi] for p in result.points.points],
            "history": [[i, v] for i, v in result.history],
            "manifest": manifest,
        }
        sys.stdout.write(_json_payload(doc))
    else:
        pairs = [
            ("Eg", f"{result.entanglement.eg_log2:.9f}"),
            ("EG_linear", f"{result.entanglement.eg_linear:.9f}"),
            ("mode", args.mode),
            ("restarts_agreeing", str(result.restarts_agreeing)),
            ("status", status),
        ]
        support = np.flatnonzero(np.abs(result.state.amps) > 1e-6)
        for k in support:
            a = result.state.amps[k]
            val = f"{a.real:.9f}" if abs(a.imag) < 1e-12 else f"{a.real:.9f}{a.imag:+.9f}j"
            pairs.append((f"a_{k}", val))
        sys.stdout.write(_kv_text(pairs))
    if args.plot:
        from . import plots

        plots.save_amplitude_heatmap(
            result.state, _plot_path(args, "majent-search"), None
        )
    return 0


def cmd_classical(args) -> int:
    config = maxsearch.ClassicalConfig(
        n=args.n, problem=args.problem, restarts=args.restarts, rng_seed=args.seed
    )
    points = maxsearch.classical_points(config)
    v = points.unit_vectors()
    manifest = io.make_manifest("classical", config, args.seed)
    if args.as_json or args.out:
        _emit(args, io.render_points_json(points, manifest))
    else:
        lines = [
            f"problem = {args.problem}",
            f"min_angle = {maxsearch.min_pairwise_angle(v):.9f}",
            f"coulomb_energy = {maxsearch.coulomb_energy(v):.9f}",
        ]
        lines += [f"{p.theta:.17g} {p.phi:.17g}" for p in points.points]
        _emit(args, "\n".join(lines) + "\n")
    if args.plot:
        from . import plots

        plots.save_points_figure(points, _plot_path(args, "majent-classical"))
    return 0


def _search_cell(n, mode, restarts, seed, rot_order=None):
    config = maxsearch.SearchConfig(
        n=n,
        mode=mode,
        rot_order=rot_order,
        outer_restarts=restarts,
        inner=SolverConfig(meridian_only=(mode == "positive"), rng_seed=seed),
        rng_seed=seed,
    )
    result = maxsearch.search_max(config)
    status = "ok" if result.restarts_agreeing >= 3 else "UNCONVERGED"
    return result.entanglement.eg_log2, status


def cmd_table(args) -> int:
    if not 2 <= args.n_min <= args.n_max <= 12:
        raise ValueError("table range must satisfy 2 <= n_min <= n_max <= 12")
    ref = io.load_reference_table()
    header = [
        "n",
        "dicke",
        "dicke_delta",
        "positive",
        "positive_status",
        "positive_delta",
        "general",
        "general_status",
        "general_delta",
        "upper",
        "upper_delta",
    ]
    rows = []
    chart_rows = []
    for n in range(args.n_min, args.n_max + 1):
        dicke = analysis.dicke_entanglement(n, n // 2)
        upper = log2(n + 1)
        pos, pos_status = _search_cell(n, "positive", args.restarts, args.seed)
        if n >= 10 and not args.skip_general:
            rot = 5 if n == 12 else None
            gen, gen_status = _search_cell(
                n, "general", max(2, args.restarts // 2), args.seed, rot_order=rot
            )
            if gen < pos:  # positive states are a subset; keep the better value
                gen, gen_status = pos, pos_status
        else:
            gen, gen_status = pos, pos_status + " (carry)"
        row = [n]
        for col, val, status in (
            ("dicke", dicke, None),
            ("positive", pos, pos_status),
            ("general", gen, gen_status),
            ("upper", upper, None),
        ):
            row.append(val)
            if status is not None:
                row.append(status)
            cell = ref.get((n, col))
            row.append(abs(val - cell.value) if cell else "")
        rows.append(row)
        chart_rows.append(
            {"n": n, "dicke": dicke, "positive": pos, "general": gen, "upper": upper}
        )
    manifest = io.make_manifest(
        "table",
        {
            "n_min": args.n_min,
            "n_max": args.n_max,
            "restarts": args.restarts,
            "skip_general": args.skip_general,
        },
        args.seed,
    )
    _emit(args, io.render_csv(header, rows, manifest))
    if args.plot:
        from . import plots

        plots.save_table_chart(chart_rows, _plot_path(args, "majent-table"))
    return 0


def cmd_amplitude_grid(args) -> int:
    if args.n_theta < 2 or args.n_phi < 2:
        raise ValueError("grid needs at least 2 samples per axis")
    state = _read_state(args)
    thetas = np.linspace(0.0, np.pi, args.n_theta)
    phis = np.linspace(0.0, 2.0 * np.pi, args.n_phi)
    grid = amplitude_grid(state, thetas, phis)
    rows = []
    for i, t in enumerate(thetas):
        for j, p in enumerate(phis):
            rows.append([float(t), float(p), float(grid[i, j])])
    manifest = io.make_manifest(
        "amplitude-grid", {"n_theta": args.n_theta, "n_phi": args.n_phi}, args.seed
    )
    _emit(args, io.render_csv(["theta", "phi", "f"], rows, manifest))
    if args.plot:
        from . import plots

        plots.save_amplitude_heatmap(state, _plot_path(args, "majent-grid"))
    return 0


def cmd_mbqc(args) -> int:
    rep = mbqc.eta_threshold(args.k)
    if args.as_json:
        doc = {
            "k": rep.k,
            "eg_linear_asymptotic": rep.eg_linear_asymptotic,
            "eta_threshold": rep.eta_threshold,
            "paper_threshold": rep.paper_threshold,
            "ruled_out": rep.ruled_out,
            "manifest": io.make_manifest("mbqc", {"k": args.k}, args.seed),
        }
        _emit(args, _json_payload(doc))
    else:
        _emit(
            args,
            _kv_text(
                [
                    ("k", str(rep.k)),
                    ("EG_asymptotic", f"{rep.eg_linear_asymptotic:.9f}"),
                    ("eta_threshold", f"{rep.eta_threshold:.9e}"),
                    ("paper_threshold", f"{rep.paper_threshold:.9e}"),
                    ("ruled_out", str(rep.ruled_out).lower()),
                ]
            ),
        )
    return 0


def cmd_classify(args) -> int:
    state = _read_state(args)
    cl = classify(state)
    pairs = [
        ("n", str(state.n)),
        ("is_positive", str(cl.is_positive).lower()),
        ("is_real", str(cl.is_real).lower()),
        ("rot_orders", ",".join(map(str, cl.rot_orders)) or "-"),
        ("max_rot_order", str(cl.max_rot_order)),
    ]
    doc = {
        "n": state.n,
        "is_positive": cl.is_positive,
        "is_real": cl.is_real,
        "rot_orders": list(cl.rot_orders),
        "max_rot_order": cl.max_rot_order,
    }
    if cl.is_positive:
        config = SolverConfig(meridian_only=True, rng_seed=args.seed)
        cppset = find_cpps(state, config, _resolve_threads(args))
        rep = verify_cpp_structure(state, cppset)
        pairs += [
            ("state_class", rep.state_class),
            ("cpp_count", str(rep.cpp_count)),
            ("cpp_bound", str(rep.cpp_bound)),
            ("bound_ok", str(rep.bound_ok).lower()),
            ("meridians_ok", str(rep.meridians_ok).lower()),
            ("poles_occupied", str(rep.poles_occupied).lower()),
        ]
        doc["structure"] = {
            "state_class": rep.state_class,
            "cpp_count": rep.cpp_count,
            "cpp_bound": rep.cpp_bound,
            "bound_ok": rep.bound_ok,
            "meridians_ok": rep.meridians_ok,
            "poles_occupied": rep.poles_occupied,
        }
    doc["manifest"] = io.make_manifest("classify", None, args.seed)
    if args.as_json:
        _emit(args, _json_payload(doc))
    else:
        _emit(args, _kv_text(pairs))
    return 0


# ----------------------------------------------------------------------
# verification suites
# ----------------------------------------------------------------------

def _suite_theorem1(args) -> tuple[bool, str]:
    ns = [args.n] if args.n else list(range(1, 13))
    worst = 0.0
    for n in ns:
        rng = np.random.default_rng(args.seed + 1000 + n)
        for _ in range(10):
            state = _random_state(n, rng)
            integral = integrate_amplitude_sq(state)
            expected = 4.0 * np.pi / (n + 1)
            worst = max(worst, abs(integral - expected) / expected)
    return worst < 1e-8, f"max relative quadrature error {worst:.2e}"


def _suite_roundtrip(args) -> tuple[bool, str]:
    ns = [args.n] if args.n else list(range(1, 13))
    worst = 1.0
    checked = 0
    for n in ns:
        rng = np.random.default_rng(args.seed + 2000 + n)
        for _ in range(15):
            state = _random_state(n, rng)
            points = state_to_points(state)
            vs = points.unit_vectors()
            cos = np.clip(vs @ vs.T, -1, 1)
            np.fill_diagonal(cos, -1.0)
            if np.arccos(cos).min() <= 1e-3:
                continue
            rebuilt = points_to_state(points)
            fid = abs(np.vdot(state.amps, rebuilt.amps))
            worst = min(worst, fid)
            checked += 1
    return worst >= 1.0 - 1e-8, f"worst fidelity {worst:.12f} over {checked} states"


def _suite_dicke(args) -> tuple[bool, str]:
    worst = 0.0
    config = SolverConfig(meridian_only=True, rng_seed=args.seed)
    for n in range(2, 11):
        for k in {1, n // 2}:
            closed = analysis.dicke_entanglement(n, k)
            cppset = find_cpps(make_dicke(n, k), config)
            numeric = -log2(cppset.max_value**2)
            gap = abs(closed - numeric)
            if args.corrupt:
                gap += 1e-3  # deliberate corruption to prove sensitivity
            worst = max(worst, gap)
    return worst < 1e-7, f"max |closed - numeric| = {worst:.2e}"


def _suite_bounds(args) -> tuple[bool, str]:
    ref = io.load_reference_table()
    for n in range(2, 13):
        rep = analysis.entanglement_bounds(n)
        if not rep.dicke_lower <= rep.upper:
            return False, f"n={n}: dicke_lower > upper"
        if not (rep.general_lower == n / 2 and rep.general_upper == n - 1):
            return False, f"n={n}: general bounds wrong"
        chain = [ref[(n, c)].value for c in ("dicke", "positive", "general", "upper")]
        if not (chain[0] <= chain[1] + 1e-12 <= chain[2] + 2e-12 < chain[3]):
            return False, f"n={n}: reference chain violated"
    return True, "bound chains hold for n = 2..12"


def _suite_duality(args) -> tuple[bool, str]:
    config = SolverConfig(rng_seed=args.seed)
    pairs = [
        ("tetrahedron", "tetrahedron"),
        ("icosahedron", "dodecahedron"),
        ("octahedron", "cube"),
    ]
    results = []
    for name_a, name_b in pairs:
        rep = analysis.duality_report(
            maxsearch.platonic_state(name_a), maxsearch.platonic_state(name_b), config
        )
        if not rep.is_dual_pair:
            return False, (
                f"{name_a}/{name_b} not dual: "
                f"{rep.mp_a_vs_cpp_b:.2e}, {rep.cpp_a_vs_mp_b:.2e}"
            )
        results.append(max(rep.mp_a_vs_cpp_b, rep.cpp_a_vs_mp_b))
    return True, f"3 dual pairs, worst Hausdorff {max(results):.2e}"


def _suite_lemmas(args) -> tuple[bool, str]:
    from .analysis import hausdorff_angle

    config = SolverConfig(meridian_only=True, rng_seed=args.seed)
    checked = 0
    for n in range(4, 9):
        rng = np.random.default_rng(args.seed + 3000 + n)
        for i in range(12):
            if i % 3 == 2:  # rotationally symmetric positive state
                m = int(rng.integers(2, min(n, 4) + 1))
                k0 = int(rng.integers(0, m))
                amps = np.zeros(n + 1)
                idx = np.arange(k0, n + 1, m)
                amps[idx] = np.abs(rng.normal(size=len(idx))) + 0.05
            else:
                amps = np.abs(rng.normal(size=n + 1)) + 0.01
            state = normalize(SymmetricState(n, amps.astype(complex)))
            rep = verify_cpp_structure(state, find_cpps(state, config))
            if rep.state_class.startswith("excluded"):
                continue
            if not rep.passes:
                return False, f"n={n} state {i}: structure check failed ({rep})"
            checked += 1
        for i in range(6):  # real states: conjugation-symmetric points
            amps = rng.normal(size=n + 1)
            state = normalize(SymmetricState(n, amps.astype(complex)))
            v = state_to_points(state).unit_vectors()
            mirrored = v * np.array([1.0, -1.0, 1.0])
            if hausdorff_angle(v, mirrored) > 1e-8:
                return False, f"n={n} real state {i}: points not conjugation-symmetric"
            checked += 1
    return True, f"{checked} random states satisfy the structure results"


def _suite_table(args) -> tuple[bool, str]:
    ref = io.load_reference_table()
    for n in range(2, 13):
        if abs(analysis.dicke_entanglement(n, n // 2) - ref[(n, "dicke")].value) > ref[
            (n, "dicke")
        ].tolerance:
            return False, f"n={n}: dicke column mismatch"
        if abs(log2(n + 1) - ref[(n, "upper")].value) > ref[(n, "upper")].tolerance:
            return False, f"n={n}: upper column mismatch"
    n_max = args.n if args.n else 8
    for n in range(4, n_max + 1):
        val, status = _search_cell(n, "positive", args.restarts, args.seed)
        cell = ref[(n, "positive")]
        if status != "ok":
            return False, f"n={n}: positive search UNCONVERGED"
        if abs(val - cell.value) > max(cell.tolerance, 1e-4):
            return False, f"n={n}: positive search off by {abs(val - cell.value):.2e}"
    return True, f"closed-form columns and positive search n <= {n_max} match"


_SUITES = {
    "theorem1": _suite_theorem1,
    "roundtrip": _suite_roundtrip,
    "dicke": _suite_dicke,
    "bounds": _suite_bounds,
    "duality": _suite_duality,
    "lemmas": _suite_lemmas,
    "table": _suite_table,
}
_DEFAULT_SUITES = ["theorem1", "roundtrip", "dicke", "bounds", "duality", "lemmas"]


def cmd_verify(args) -> int:
    names = [args.suite] if args.suite else list(_DEFAULT_SUITES)
    failures = 0
    for name in names:
        if name not in _SUITES:
            raise ValueError(f"unknown suite {name!r}; known: {sorted(_SUITES)}")
        ok, detail = _SUITES[name](args)
        tag = "PASS" if ok else "FAIL"
        print(f"{tag} {name}: {detail}")
        failures += 0 if ok else 1
    print(f"{len(names) - failures}/{len(names)} suites passed")
    return 1 if failures else 0


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="majent",
        description="Geometric entanglement of permutation-symmetric qubit states "
        "via the Bloch-sphere point representation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, plot=False):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--seed", type=int, default=42, help="RNG seed (default 42)")
        p.add_argument(
            "--threads",
            type=int,
            default=None,
            help="solver threads (overrides MAJ_ENT_THREADS; default 1)",
        )
        p.add_argument("--json", dest="as_json", action="store_true", help="emit JSON")
        p.add_argument("--out", default=None, help="write the payload to this file")
        if plot:
            p.add_argument(
                "--plot", action="store_true", help="render a PNG next to the output"
            )
        return p

    def add_solver_flags(p):
        p.add_argument("--starts", type=int, default=400, help="multistart seed count")
        p.add_argument(
            "--meridian",
            action="store_true",
            help="exploit the positive-state meridian restriction",
        )

    p = add("ent", cmd_ent, "geometric entanglement of a state file", plot=True)
    p.add_argument("state_file")
    add_solver_flags(p)
    p.add_argument("--normalize", action="store_true", help="normalize the input first")

    p = add("cpps", cmd_cpps, "closest product points of a state file")
    p.add_argument("state_file")
    add_solver_flags(p)
    p.add_argument("--normalize", action="store_true")

    p = add("points", cmd_points, "Majorana points of a state file", plot=True)
    p.add_argument("state_file")
    p.add_argument("--normalize", action="store_true")

    p = add("state", cmd_state, "symmetric state carried by a points file")
    p.add_argument("points_file")

    p = add("dicke", cmd_dicke, "closed-form Dicke entanglement and CPP")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)

    p = add("bounds", cmd_bounds, "entanglement bounds at a given qubit count")
    p.add_argument("n", type=int)

    p = add("moments", cmd_moments, "spin vector and second-moment deviation")
    p.add_argument("input_file", help="points file or state file")
    p.add_argument("--normalize", action="store_true")

    p = add("duality", cmd_duality, "MP/CPP interchange report for two states")
    p.add_argument("state_a")
    p.add_argument("state_b")
    add_solver_flags(p)
    p.add_argument("--normalize", action="store_true")

    p = add("search", cmd_search, "maximize entanglement over symmetric states", plot=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["positive", "real", "general"], default="positive")
    p.add_argument("--rot-order", type=int, default=None, help="restrict support masks")
    p.add_argument("--restarts", type=int, default=12, help="outer restarts per mask")
    p.add_argument("--tol", type=float, default=1e-6, help="restart agreement tolerance")
    p.add_argument("--starts", type=int, default=400)

    p = add("classical", cmd_classical, "classical point-configuration baselines", plot=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--problem", choices=["toth", "thomson"], default="thomson")
    p.add_argument("--restarts", type=int, default=16)

    p = add("table", cmd_table, "reproduce the reference entanglement table", plot=True)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument(
        "--skip-general",
        action="store_true",
        help="carry the positive column instead of running general-mode searches",
    )

    p = add("amplitude-grid", cmd_amplitude_grid, "sample f on a theta/phi grid", plot=True)
    p.add_argument("state_file")
    p.add_argument("--n-theta", type=int, default=91)
    p.add_argument("--n-phi", type=int, default=181)
    p.add_argument("--normalize", action="store_true")

    p = add("mbqc", cmd_mbqc, "approximate-universality threshold report")
    p.add_argument("--k", type=int, required=True)

    p = add("verify", cmd_verify, "run the invariant suites")
    p.add_argument("--suite", default=None, help=f"one of {sorted(_SUITES)}")
    p.add_argument("--n", type=int, default=None, help="restrict suites to one n")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument(
        "--corrupt",
        action="store_true",
        help="self-test: inject an error and require a FAIL",
    )

    p = add("classify", cmd_classify, "symmetry classification and structure checks")
    p.add_argument("state_file")
    add_solver_flags(p)
    p.add_argument("--normalize", action="store_true")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        code = args.func(args)
    except io.FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"error: solver did not converge: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        ms = int(round(1000.0 * (time.perf_counter() - t0)))
        print(f"[majent] wall time: {ms} ms", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
