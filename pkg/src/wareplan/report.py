"""Plot-ready tables and rendered figures for Pareto exploration reports."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def pareto_rows(pareto_data: dict) -> list[dict]:
    """Flat table of every sweep candidate with its front flag."""
    front = set(pareto_data.get("front", []))
    rows = []
    for idx, cand in enumerate(pareto_data["candidates"]):
        conn = cand.get("connectivity") or {}
        rows.append(
            {
                "alpha": cand["params"]["alpha"],
                "theta": cand["params"]["theta"],
                "n_pf": cand["score"]["n_pf"],
                "n_s": cand["score"]["n_s"],
                "score": cand["score"]["score"],
                "connectivity": conn.get("score", ""),
                "on_front": idx in front,
            }
        )
    return rows


def write_pareto_table(pareto_data: dict, path) -> None:
    rows = pareto_rows(pareto_data)
    fields = ["alpha", "theta", "n_pf", "n_s", "score", "connectivity", "on_front"]
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)


def write_pareto_figure(pareto_data: dict, path, manual: dict | None = None) -> None:
    """Scatter of all candidates with the front polyline highlighted.

    ``manual`` is an optional {"n_pf": ..., "n_s": ...} comparison point,
    drawn as a red star.
    """
    rows = pareto_rows(pareto_data)
    fig, ax = plt.subplots(figsize=(7, 5))
    others = [r for r in rows if not r["on_front"]]
    front = sorted((r for r in rows if r["on_front"]), key=lambda r: r["n_pf"])
    if others:
        ax.scatter(
            [r["n_pf"] for r in others],
            [r["n_s"] for r in others],
            c="#4878b0", alpha=0.7, label="candidates",
        )
    if front:
        ax.plot(
            [r["n_pf"] for r in front],
            [r["n_s"] for r in front],
            "--", color="#e377c2", zorder=2, label="Pareto front",
        )
        ax.scatter(
            [r["n_pf"] for r in front],
            [r["n_s"] for r in front],
            c="#e377c2", zorder=3,
        )
    if manual is not None:
        ax.scatter(
            [manual["n_pf"]], [manual["n_s"]],
            marker="*", s=220, c="red", zorder=4, label="manual layout",
        )
    ax.set_xlabel("pick faces")
    ax.set_ylabel("storage capacity")
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(Path(path), dpi=150)
    plt.close(fig)
