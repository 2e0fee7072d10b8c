"""Rendering of sweep tables and crossover curves to image files.

Figures are written with the Agg backend next to the delimited output; the
CSV/JSON stays the primary data product.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_AXIS_LABEL = {"p": "noise parameter p", "mu": "correlation degree mu", "eta": "state parameter eta"}


def render_sweep(
    path: str,
    axis1_name: str,
    axis1_values: np.ndarray,
    capacities: np.ndarray,
    encoding: str,
    axis2_name: str | None = None,
    axis2_values: np.ndarray | None = None,
) -> None:
    """Line plot for 1-D sweeps, heat map for 2-D sweeps."""
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    if axis2_name is None:
        ax.plot(axis1_values, capacities, lw=2)
        ax.set_xlabel(_AXIS_LABEL.get(axis1_name, axis1_name))
        ax.set_ylabel("capacity (bits)")
        ax.grid(True, alpha=0.3)
    else:
        grid = np.asarray(capacities).reshape(len(axis1_values), len(axis2_values))
        mesh = ax.pcolormesh(axis2_values, axis1_values, grid, shading="auto")
        ax.set_xlabel(_AXIS_LABEL.get(axis2_name, axis2_name))
        ax.set_ylabel(_AXIS_LABEL.get(axis1_name, axis1_name))
        fig.colorbar(mesh, ax=ax, label="capacity (bits)")
    ax.set_title(f"encoding: {encoding}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_crossover(path: str, points: list[dict]) -> None:
    """Crossover correlation degree as a function of the noise parameter."""
    ps = [row["p"] for row in points if row["mu_tilde"] is not None]
    mus = [row["mu_tilde"] for row in points if row["mu_tilde"] is not None]
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    ax.plot(ps, mus, "r--", lw=2)
    ax.set_xlabel(_AXIS_LABEL["p"])
    ax.set_ylabel("crossover correlation degree")
    ax.set_ylim(0.0, 1.0)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
