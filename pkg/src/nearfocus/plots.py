"""Matplotlib renderings of the CLI's delimited outputs.

Every report command saves a PNG next to its CSV so results can be eyed
without a plotting pipeline. Rendering runs headless (Agg) and each
function writes one file and closes its figure.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .fieldmap import Component, FieldMap


def heatmap(fmap: FieldMap, component: Component, path: str, title: str = "") -> None:
    """Magnitude heatmap over the map grid, x vertical, z horizontal."""
    mag = fmap.magnitude(component)
    x_lo, x_hi = fmap.grid.x_range
    z_lo, z_hi = fmap.grid.z_range
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    im = ax.imshow(
        mag,
        origin="lower",
        aspect="auto",
        extent=(z_lo, z_hi, x_lo, x_hi),
        cmap="inferno",
    )
    fig.colorbar(im, ax=ax, label=f"|{component.value}|")
    ax.set_xlabel("z (m)")
    ax.set_ylabel("x (m)")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def profile_overlay(
    deltas: np.ndarray, series: dict[str, np.ndarray], xlabel: str, path: str
) -> None:
    """1-D profile curves (e.g. discrete sum vs closed form) on one axis."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label, values in series.items():
        ax.plot(deltas, values, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("normalized |E|")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def phase_stems(positions: np.ndarray, degrees: np.ndarray, path: str) -> None:
    """Per-element phase assignment along the array."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.stem(positions, degrees)
    ax.set_xlabel("element position (m)")
    ax.set_ylabel("phase (deg)")
    ax.set_ylim(0.0, 360.0)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def convergence_curves(
    rows: list[tuple[int, float, float]], asymptote: float, path: str
) -> None:
    """Focal peaks vs element count with the 2/d asymptote marked."""
    n = [r[0] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(n, [r[1] for r in rows], label="peak ex")
    ax.plot(n, [r[2] for r in rows], label="peak ez")
    ax.axhline(asymptote, color="gray", linestyle="--", label="2 / spacing")
    ax.set_xlabel("element count")
    ax.set_ylabel("focal peak (normalized)")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def axial_ratio_curve(rows: list[tuple[int, float, float, float]], path: str) -> None:
    """AR vs element count with the circular-polarization bound."""
    n = [r[0] for r in rows]
    ar = [r[3] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(n, ar)
    ax.axhline(2.0, color="gray", linestyle="--", label="AR = 2")
    ax.set_xlabel("element count")
    ax.set_ylabel("axial ratio")
    ax.set_ylim(bottom=1.0)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def coupling_curves(
    separations: np.ndarray,
    abs_side_by_side: np.ndarray,
    abs_collinear: np.ndarray,
    path: str,
) -> None:
    """|Z| vs separation for both arrangements (NaN segments skipped)."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(separations, abs_side_by_side, label="side by side")
    ax.plot(separations, abs_collinear, label="collinear")
    ax.set_xlabel("separation (m)")
    ax.set_ylabel("|Z| (ohm)")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
