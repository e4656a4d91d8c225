"""Render sweep heatmaps, gap curves and ground-state reports to image files.

Imported lazily by the CLI so that library use never touches a matplotlib
backend; everything here draws through Agg straight to disk.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import ListedColormap
from matplotlib.patches import Patch

from .observables import GroundStateReport
from .sweep import PHASE_LABELS, PhaseGrid

_PHASE_COLORS = ("#3b4cc0", "#7fb2d5", "#f4a582", "#b40426")


def _extent(grid: PhaseGrid):
    return (grid.deltas[0], grid.deltas[-1], grid.js[0], grid.js[-1])


def _heatmap(grid: PhaseGrid, values: np.ndarray, title: str, path: Path):
    fig, ax = plt.subplots(figsize=(5.2, 4.0))
    image = ax.imshow(values.T, origin="lower", aspect="auto",
                      extent=_extent(grid), cmap="viridis")
    fig.colorbar(image, ax=ax)
    ax.set_xlabel(r"detuning $\Delta/g$")
    ax.set_ylabel(r"dipole coupling $J/g$")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_phase_grid_figures(grid: PhaseGrid, stem) -> list:
    """Write the three order-parameter heatmaps and the phase map.

    Returns the list of written paths ``<stem>_var_n1.png``,
    ``<stem>_var_na1.png``, ``<stem>_product.png``, ``<stem>_phases.png``.
    """
    stem = Path(stem)
    stem.parent.mkdir(parents=True, exist_ok=True)
    written = []
    for suffix, values, title in (
            ("var_n1", grid.var_n1, r"excitation variance $\Delta N_1$"),
            ("var_na1", grid.var_na1, r"atomic variance $\Delta N_{A1}$"),
            ("product", grid.product, r"$\Delta N_1\,\Delta N_{A1}$")):
        path = stem.parent / f"{stem.name}_{suffix}.png"
        _heatmap(grid, values, title, path)
        written.append(path)

    codes = np.empty(grid.labels.shape, dtype=int)
    for value, label in enumerate(PHASE_LABELS):
        codes[grid.labels == label] = value
    fig, ax = plt.subplots(figsize=(5.6, 4.0))
    ax.imshow(codes.T, origin="lower", aspect="auto", extent=_extent(grid),
              cmap=ListedColormap(_PHASE_COLORS), vmin=-0.5,
              vmax=len(PHASE_LABELS) - 0.5, interpolation="nearest")
    ax.set_xlabel(r"detuning $\Delta/g$")
    ax.set_ylabel(r"dipole coupling $J/g$")
    ax.set_title("ground-state phases")
    handles = [Patch(color=c, label=l) for c, l in zip(_PHASE_COLORS, PHASE_LABELS)]
    ax.legend(handles=handles, loc="upper left", fontsize=7, framealpha=0.9)
    fig.tight_layout()
    path = stem.parent / f"{stem.name}_phases.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)
    return written


def save_gap_curve_figure(table: np.ndarray, path) -> Path:
    """Plot the four level gaps against the dipole coupling."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(5.2, 4.0))
    names = (r"$\Delta E_1$", r"$\Delta E_2$", r"$\Delta E_3$", r"$\Delta E_4$")
    for column, name in enumerate(names, start=1):
        ax.plot(table[:, 0], table[:, column], label=name)
    ax.set_xlabel(r"dipole coupling $J/g$")
    ax.set_ylabel(r"gap / $g$")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_ground_report_figure(report: GroundStateReport, flags: dict, path) -> Path:
    """Bar charts of the subspace weights and the excitation character."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, (left, right) = plt.subplots(1, 2, figsize=(7.6, 3.4),
                                      gridspec_kw={"width_ratios": (3, 2)})
    if report.probabilities is not None:
        heights = list(report.probabilities.as_tuple())
        names = [r"$\varphi_1$", r"$\varphi_2$", r"$\varphi_3$",
                 r"$\varphi_4$", r"$\varphi_5$"]
        if report.full_model:
            heights.append(report.outside)
            names.append("outside")
        left.bar(names, heights, color="#3b4cc0")
    else:
        left.text(0.5, 0.5, "subspace weights need n = 2",
                  ha="center", va="center", transform=left.transAxes)
    left.set_ylim(0, 1.05)
    left.set_ylabel("probability")
    left.set_title("polariton subspace weights")

    right.bar(("photonic", "atomic", "mixed"), report.character.as_tuple(),
              color=("#b40426", "#3b4cc0", "#7f7f7f"))
    right.set_ylim(0, 1.05)
    right.set_title("excitation character")
    fig.suptitle(
        rf"$\Delta={flags['delta']:g}g$, $J={flags['j']:g}g$, $A={flags['a']:g}g$",
        fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
