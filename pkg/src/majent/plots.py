"""Figure rendering for report outputs.

Every CLI report path can render a PNG next to its delimited output:
amplitude heatmaps with Majorana and closest-product points overlaid,
point-set scatter views, and the entanglement-versus-n table chart.
Rendering uses the non-interactive backend and fixed figure geometry so
repeated runs produce the same image.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .majorana import MajoranaPoints, amplitude_grid, state_to_points  # noqa: E402
from .states import SymmetricState  # noqa: E402

__all__ = [
    "save_amplitude_heatmap",
    "save_points_figure",
    "save_table_chart",
]


def save_amplitude_heatmap(
    state: SymmetricState,
    path: str | Path,
    cpps=None,
    n_theta: int = 181,
    n_phi: int = 361,
) -> None:
    """Heatmap of f over the (phi, theta) rectangle with point overlays."""
    thetas = np.linspace(0.0, np.pi, n_theta)
    phis = np.linspace(0.0, 2 * np.pi, n_phi)
    grid = amplitude_grid(state, thetas, phis)
    fig, ax = plt.subplots(figsize=(8.0, 4.2))
    mesh = ax.pcolormesh(phis, thetas, grid, shading="auto", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="f")
    mps = state_to_points(state)
    ax.plot(
        [p.phi for p in mps.points],
        [p.theta for p in mps.points],
        "wx",
        markersize=8,
        label="MPs",
    )
    if cpps:
        ax.plot(
            [p.phi for p in cpps],
            [p.theta for p in cpps],
            "r.",
            markersize=10,
            label="CPPs",
        )
    ax.set_xlabel("phi")
    ax.set_ylabel("theta")
    ax.set_ylim(np.pi, 0.0)
    ax.legend(loc="upper right", framealpha=0.9)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_points_figure(points: MajoranaPoints, path: str | Path) -> None:
    """3-D scatter of a point configuration on a wireframe sphere."""
    v = points.unit_vectors()
    fig = plt.figure(figsize=(5.5, 5.5))
    ax = fig.add_subplot(projection="3d")
    u = np.linspace(0, 2 * np.pi, 36)
    t = np.linspace(0, np.pi, 18)
    ax.plot_wireframe(
        np.outer(np.cos(u), np.sin(t)),
        np.outer(np.sin(u), np.sin(t)),
        np.outer(np.ones_like(u), np.cos(t)),
        color="lightgray",
        linewidth=0.4,
    )
    ax.scatter(v[:, 0], v[:, 1], v[:, 2], c="crimson", s=45, depthshade=False)
    ax.set_box_aspect((1, 1, 1))
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_table_chart(rows: list[dict], path: str | Path) -> None:
    """Line chart of the entanglement columns versus qubit count.

    ``rows`` carry keys n, dicke, positive, general, upper; search cells
    may be None (skipped/unconverged) and are simply not drawn.
    """
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ns = [r["n"] for r in rows]
    for key, style in (
        ("dicke", "o-"),
        ("positive", "s-"),
        ("general", "d--"),
        ("upper", "^:"),
    ):
        ys = [r.get(key) for r in rows]
        pairs = [(x, y) for x, y in zip(ns, ys) if y is not None]
        if pairs:
            ax.plot(*zip(*pairs), style, label=key)
    ax.set_xlabel("n")
    ax.set_ylabel("E_g")
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
