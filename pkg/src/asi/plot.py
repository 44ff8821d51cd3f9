"""SVG figures of labeled angular embeddings (hyperbolic disk or sphere views)."""

from __future__ import annotations

import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .io import CoordsTable  # noqa: E402


def _palette(groups):
    cmap = plt.get_cmap("tab10" if len(groups) <= 10 else "tab20")
    return {g: cmap(k % cmap.N) for k, g in enumerate(groups)}


def _disk_radius(table: CoordsTable) -> np.ndarray:
    if table.r is None:
        return np.ones(len(table.theta))
    rmax = float(np.max(table.r))
    return table.r / rmax if rmax > 0 else np.zeros(len(table.r))


def render_svg(table: CoordsTable, labels: list, title: str | None = None) -> str:
    """Render the embedding and return the SVG document as text.

    Output is byte-stable: no timestamps, fixed element ids, colors assigned by
    sorted label order.
    """
    groups = sorted(set(labels))
    colors = _palette(groups)
    labels = np.asarray(labels, dtype=object)
    with matplotlib.rc_context({"svg.hashsalt": "asi", "svg.fonttype": "path"}):
        if table.dims == 2:
            fig = plt.figure(figsize=(5.5, 5))
            ax = fig.add_subplot(projection="polar")
            rad = _disk_radius(table)
            for g in groups:
                sel = labels == g
                ax.scatter(table.theta[sel], rad[sel], s=14, color=colors[g], label=str(g))
            ax.set_ylim(0, 1.05)
            ax.set_yticklabels([])
        else:
            fig, (ax1, ax2) = plt.subplots(
                1, 2, figsize=(10, 4.5), subplot_kw={}, gridspec_kw={"width_ratios": [1.6, 1]}
            )
            fig.delaxes(ax2)
            ax2 = fig.add_subplot(1, 2, 2, projection="polar")
            colat = np.pi / 2 - table.phi
            for g in groups:
                sel = labels == g
                ax1.scatter(table.theta[sel], table.phi[sel], s=12, color=colors[g], label=str(g))
                ax2.scatter(table.theta[sel], colat[sel], s=12, color=colors[g])
            ax1.set_xlim(0, 2 * np.pi)
            ax1.set_ylim(-np.pi / 2, np.pi / 2)
            ax1.set_xlabel("azimuth (rad)")
            ax1.set_ylabel("elevation (rad)")
            ax2.set_ylim(0, np.pi)
            ax2.set_yticklabels([])
            ax = ax1
        ax.legend(loc="upper right", fontsize=7, frameon=False, bbox_to_anchor=(1.25, 1.1))
        if title:
            fig.suptitle(title)
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buf.getvalue()
