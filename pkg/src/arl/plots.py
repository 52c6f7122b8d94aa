"""Figure rendering for the CLI report paths.

Figures are written next to the delimited output; the data they draw is
exactly what the CSV rows carry, so a figure never adds information, only
a view.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def _finish(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_bounds_figure(rows, path) -> Path:
    """Joint-h and epsilon-bound curves against 1/rho on log-x axes."""
    inv_rho = [1.0 / r["rho"] for r in rows]
    fig, (ax_h, ax_eps) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax_h.plot(inv_rho, [r["h"] for r in rows], marker=".", lw=1)
    ax_h.set_xscale("log")
    ax_h.set_yscale("log")
    ax_h.set_xlabel(r"$1/\rho$")
    ax_h.set_ylabel(r"$h(\rho)$")
    ax_eps.plot(inv_rho, [r["epsilon_bound"] for r in rows], marker=".", lw=1,
                color="tab:orange")
    ax_eps.set_xscale("log")
    ax_eps.set_yscale("log")
    ax_eps.set_xlabel(r"$1/\rho$")
    ax_eps.set_ylabel(r"$\varepsilon$ bound")
    return _finish(fig, path)


def save_experiment_figure(rows, path) -> Path:
    """Measured (delta, epsilon) points, with the predicted bound where known."""
    fig, ax = plt.subplots(figsize=(5.2, 3.8))
    deltas = [float(r.delta) for r in rows if r.delta is not None]
    epsilons = [float(r.epsilon) for r in rows if r.delta is not None]
    ax.scatter(deltas, epsilons, s=18, label="measured")
    predicted = [(float(r.delta), r.predicted_bound) for r in rows
                 if r.delta is not None and r.predicted_bound is not None]
    if predicted:
        predicted.sort()
        ax.plot([p for p, _ in predicted], [b for _, b in predicted],
                color="tab:red", lw=1, label="predicted bound")
    ax.set_xlabel(r"$\delta$ = triangles / $N^2$")
    ax.set_ylabel(r"$\varepsilon$ = deletions / $N$")
    ax.legend(loc="best", fontsize=8)
    return _finish(fig, path)


def save_extraction_figure(reports, path) -> Path:
    """Histogram of per-trial good-triangle counts."""
    counts = [r.good_count for r in reports]
    fig, ax = plt.subplots(figsize=(5.2, 3.8))
    top = max(counts) if counts else 0
    ax.hist(counts, bins=range(0, top + 2), align="left", rwidth=0.85)
    ax.set_xlabel("good triangles per trial")
    ax.set_ylabel("trials")
    return _finish(fig, path)
