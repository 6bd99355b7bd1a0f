"""SVG success-rate curves: median line with a 25-75 percentile band."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402 - backend must be set first

from .stats import CurveStats  # noqa: E402


def plot_curves(series: dict[str, CurveStats], out_path: str | Path, title: str = "") -> Path:
    out_path = Path(out_path)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, stats in series.items():
        (line,) = ax.plot(stats.steps, stats.median, label=label)
        ax.fill_between(stats.steps, stats.p25, stats.p75, alpha=0.25, color=line.get_color())
    ax.set_xlabel("environment steps")
    ax.set_ylabel("success rate")
    ax.set_ylim(-0.05, 1.05)
    if title:
        ax.set_title(title)
    if series:
        ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, format="svg")
    plt.close(fig)
    return out_path
