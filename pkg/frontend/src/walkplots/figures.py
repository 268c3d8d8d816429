"""The four figure renderers.

Each function takes validated tables and an output path and writes one
static image; nothing here mutates the numeric data.
"""

from __future__ import annotations

import warnings
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .csvio import Table, sibling_metadata

__all__ = [
    "plot_distribution_overlay",
    "plot_sigma_loglog",
    "plot_surface",
    "plot_ensemble_distribution",
]


def _curve_label(table: Table) -> str:
    meta = sibling_metadata(table.path)
    if meta:
        alpha = meta.get("config", {}).get("alpha")
        if alpha is not None:
            return f"alpha = {alpha:.4f}"
    return table.path.stem


def _occupied_parity(k: np.ndarray, p: np.ndarray) -> np.ndarray:
    even = k % 2 == 0
    return even if p[even].sum() >= p[~even].sum() else ~even


def plot_distribution_overlay(tables: list[Table], out: str | Path) -> None:
    """Overlay P(k) curves, keeping only the occupied parity class of k."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for table in tables:
        k = np.asarray(table.column("k"))
        p = np.asarray(table.column("p"))
        keep = _occupied_parity(k.astype(np.int64), p)
        ax.plot(k[keep], p[keep], lw=1.0, label=_curve_label(table))
    ax.set_xlabel("k")
    ax.set_ylabel("P(k)")
    ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)


def plot_sigma_loglog(tables: list[Table], out: str | Path) -> None:
    """sigma(t) on log-log axes, annotated with fitted slopes when available."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for table in tables:
        t = np.asarray(table.column("t"))
        s = np.asarray(table.column("sigma"))
        keep = (t > 0) & (s > 0)
        label = table.path.stem
        meta = sibling_metadata(table.path)
        fit = (meta or {}).get("fit") or (meta or {}).get("fit_of_mean")
        if fit and "exponent" in fit:
            label += f"  (c = {fit['exponent']:.3f})"
        elif meta is None:
            warnings.warn(f"{table.path}: no metadata.json next to input; plotting without slope annotation")
        ax.loglog(t[keep], s[keep], lw=1.0, label=label)
    ax.set_xlabel("t")
    ax.set_ylabel("sigma(t)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)


def _surface_grid(table: Table) -> tuple[np.ndarray, np.ndarray, np.ma.MaskedArray]:
    alphas = np.asarray(table.column("alpha"))
    betas = np.asarray(table.column("beta"))
    c = np.asarray(table.column("c"))
    a_axis = np.unique(alphas)
    b_axis = np.unique(betas)
    grid = np.full((a_axis.size, b_axis.size), np.nan)
    ai = np.searchsorted(a_axis, alphas)
    bi = np.searchsorted(b_axis, betas)
    grid[ai, bi] = c
    return a_axis, b_axis, np.ma.masked_invalid(grid)


def plot_surface(table: Table, out: str | Path, style: str = "heatmap") -> None:
    """Render c(alpha, beta) as a heatmap (default) or a 3-D surface.

    NaN cells are masked; the alpha = beta diagonal is marked.
    """
    a_axis, b_axis, grid = _surface_grid(table)
    if style == "3d":
        fig = plt.figure(figsize=(7, 5.5))
        ax = fig.add_subplot(projection="3d")
        bb, aa = np.meshgrid(b_axis, a_axis)
        ax.plot_surface(aa, bb, grid.filled(np.nan), cmap="viridis")
        diag = np.linspace(a_axis[0], a_axis[-1], 50)
        ax.plot(diag, diag, np.ones_like(diag), color="black", lw=1.0)
        ax.set_xlabel("alpha")
        ax.set_ylabel("beta")
        ax.set_zlabel("c")
    else:
        fig, ax = plt.subplots(figsize=(6.5, 5.5))
        mesh = ax.pcolormesh(b_axis, a_axis, grid, shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label="c")
        ax.plot([b_axis[0], b_axis[-1]], [a_axis[0], a_axis[-1]], color="white", lw=1.0, ls="--")
        ax.set_xlabel("beta")
        ax.set_ylabel("alpha")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)


def plot_ensemble_distribution(tables: list[Table], out: str | Path) -> None:
    """Disorder-averaged P(k): full occupied-parity curve, linear axes."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for table in tables:
        k = np.asarray(table.column("k"))
        p = np.asarray(table.column("p"))
        keep = _occupied_parity(k.astype(np.int64), p)
        ax.plot(k[keep], p[keep], lw=0.7, label=_curve_label(table))
    ax.set_xlabel("k")
    ax.set_ylabel("mean P(k)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
