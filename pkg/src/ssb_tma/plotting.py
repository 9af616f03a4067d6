"""Matplotlib figures for pattern cuts and harmonic spectra.

Only imported when a figure is requested, so the library itself does not
need a display or matplotlib at import time.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 10,
    "axes.labelsize": 11,
    "axes.grid": True,
    "grid.alpha": 0.35,
    "lines.linewidth": 1.3,
    "legend.fontsize": 8,
    "legend.frameon": False,
    "savefig.dpi": 150,
    "svg.hashsalt": "tma",
    "path.simplify": False,
}


def pattern_figure(cuts, path, floor_db=-60.0, title=None):
    """Power pattern cuts, one line per (label, angles, power_db) triple."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(7, 4.2))
        for label, angles, power in cuts:
            ax.plot(angles, [max(p, floor_db) for p in power], label=label)
        ax.set_xlim(-90, 90)
        ax.set_ylim(floor_db, 2)
        ax.set_xlabel("Angle (deg)")
        ax.set_ylabel("Normalized power (dB)")
        if len(cuts) > 1:
            ax.legend(loc="upper right", ncol=2)
        if title:
            ax.set_title(title)
        fig.tight_layout()
        fig.savefig(path, metadata={"Date": None} if str(path).endswith(".svg") else None)
        plt.close(fig)


def spectrum_figure(rows, path, floor_db=-60.0, title=None):
    """Stem plot of (order, power_db) rows."""
    orders = [h for h, _ in rows]
    levels = [max(p, floor_db) for _, p in rows]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(6, 3.8))
        ax.vlines(orders, floor_db, levels, color="C0")
        ax.plot(orders, levels, "o", color="C0", markersize=4)
        ax.set_ylim(floor_db, 5)
        ax.set_xticks(orders)
        ax.set_xlabel("Harmonic order")
        ax.set_ylabel("Relative power (dB)")
        if title:
            ax.set_title(title)
        fig.tight_layout()
        fig.savefig(path, metadata={"Date": None} if str(path).endswith(".svg") else None)
        plt.close(fig)
