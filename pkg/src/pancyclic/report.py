"""PNG figures for a sweep report."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _slug(label: str) -> str:
    return label.replace(":", "-")


def render(report: dict, out_dir: str | Path) -> list[Path]:
    """Write per-length timing and failure plots; returns the file paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = sorted((int(L), c) for L, c in report["per_length"].items())
    lengths = [L for L, _ in rows]
    stem = f"{_slug(report['spec'])}-{report['engine']}"

    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.plot(lengths, [c["mean_ms"] for _, c in rows], marker=".", linewidth=1)
    ax.set_xlabel("cycle length")
    ax.set_ylabel("mean time per task (ms)")
    ax.set_title(f"{report['spec']}: {report['tasks']} tasks, {report['failed']} failed")
    ax.grid(alpha=0.3)
    timing = out / f"{stem}-timing.png"
    fig.tight_layout()
    fig.savefig(timing, dpi=120)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.bar(lengths, [c["failed"] for _, c in rows], color="tab:red", width=0.9)
    ax.set_xlabel("cycle length")
    ax.set_ylabel("failed tasks")
    ax.set_title(f"{report['spec']}: failures by length")
    ax.grid(axis="y", alpha=0.3)
    fails = out / f"{stem}-failures.png"
    fig.tight_layout()
    fig.savefig(fails, dpi=120)
    plt.close(fig)
    return [timing, fails]
