"""Figure rendering for the report paths (headless Agg backend).

Figures are written next to the delimited/JSON artifacts they belong to:
eigenvalue trajectories beside the sweep CSV, Gershgorin disks beside
the disk table.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Circle  # noqa: E402


def sweep_figure(rows, m: int, path: str):
    """Eigenvalue trajectories over the gamma grid; `rows` are
    (gamma, branch index, eigenvalue) triples."""
    branches: dict = {}
    for g, k, val in rows:
        branches.setdefault(k, []).append((g, val))
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for k in sorted(branches):
        pts = sorted(branches[k])
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                label=f"k={k}", lw=1.2)
    ax.set_xlabel(r"$\gamma$")
    ax.set_ylabel(r"eigenvalue of $J_0^\gamma$")
    ax.set_title(f"spectrum trajectories, m={m}")
    ax.axhline(0.0, color="0.8", lw=0.6, zorder=0)
    if m <= 8:
        ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def gershgorin_figure(centers, radius, eigenvalues, path: str,
                      disjoint=None):
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for c in centers:
        ax.add_patch(Circle((c, 0.0), radius, fill=False,
                            edgecolor="tab:blue", lw=1.0))
    if eigenvalues:
        ax.plot([complex(e).real for e in eigenvalues],
                [complex(e).imag for e in eigenvalues],
                "x", color="tab:red", ms=7, label="eigenvalues")
        ax.legend(fontsize=8)
    lo = min(centers) - radius - 0.5
    hi = max(centers) + radius + 0.5
    ax.set_xlim(lo, hi)
    ax.set_ylim(-(radius + 0.5), radius + 0.5)
    ax.set_aspect("equal")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    title = f"Gershgorin disks, radius {radius:g}"
    if disjoint is not None:
        title += f" ({'disjoint' if disjoint else 'overlapping'})"
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
