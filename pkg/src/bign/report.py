"""Report rendering: delimited output plus matplotlib figures.

Every reporting command writes a JSON summary, a CSV with the raw rows,
and PNG figures into the chosen output directory.  Figures use the Agg
backend so the CLI runs headless.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Dict, List, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


ATTACK_REPORT_KEYS = (
    "params",
    "seed",
    "countermeasures",
    "defeated",
    "injections",
    "verdict",
)
STATS_REPORT_KEYS = (
    "params",
    "seed",
    "codes",
    "words",
    "constant",
    "quadratic",
    "expected_total_injections",
)


def validate_report(report: Dict, required: Sequence[str]) -> None:
    missing = [k for k in required if k not in report]
    if missing:
        raise ValueError(f"report is missing keys: {missing}")


def write_json(report: Dict, path: Path) -> None:
    path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")


def write_stats_outputs(report: Dict, rows: List[Dict], outdir: Path) -> List[Path]:
    """stats.csv with one row per (code, word), a histogram of successful
    fault counts, and a p-hat bar chart."""
    outdir.mkdir(parents=True, exist_ok=True)
    validate_report(report, STATS_REPORT_KEYS)
    written = []

    csv_path = outdir / "stats.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["code", "kind", "word", "successful_faults"])
        writer.writeheader()
        writer.writerows(rows)
    written.append(csv_path)

    json_path = outdir / "stats_summary.json"
    write_json(report, json_path)
    written.append(json_path)

    const_counts = [r["successful_faults"] for r in rows if r["kind"] == "constant"]
    quad_counts = [r["successful_faults"] for r in rows if r["kind"] == "quadratic"]
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5))
    for ax, counts, title in (
        (axes[0], const_counts, "constant injections"),
        (axes[1], quad_counts, "quadratic injections"),
    ):
        if counts:
            ax.hist(counts, bins=min(30, max(5, len(set(counts)))), color="#37718e")
        ax.set_title(title)
        ax.set_xlabel("successful faults per word")
        ax.set_ylabel("words")
    fig.tight_layout()
    hist_path = outdir / "fig_success_histogram.png"
    fig.savefig(hist_path, dpi=120)
    plt.close(fig)
    written.append(hist_path)

    fig, ax = plt.subplots(figsize=(4.5, 3.5))
    ax.bar(
        ["p0", "p2"],
        [report["constant"]["p_hat"], report["quadratic"]["p_hat"]],
        color=["#37718e", "#c06e52"],
    )
    ax.set_ylim(0, 1)
    ax.set_ylabel("estimated success probability")
    ax.set_title(f"n={report['params']['n']}, m={report['params']['m']}")
    fig.tight_layout()
    bar_path = outdir / "fig_success_probability.png"
    fig.savefig(bar_path, dpi=120)
    plt.close(fig)
    written.append(bar_path)
    return written


def write_attack_outputs(report: Dict, seq_rows: List[Dict], outdir: Path) -> List[Path]:
    """attack_report.json, sequences.csv with per-sequence injection counts,
    and figures for phase timings and the injection distribution."""
    outdir.mkdir(parents=True, exist_ok=True)
    validate_report(report, ATTACK_REPORT_KEYS)
    written = []

    json_path = outdir / "attack_report.json"
    write_json(report, json_path)
    written.append(json_path)

    csv_path = outdir / "sequences.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["kind", "index", "injections"])
        writer.writeheader()
        writer.writerows(seq_rows)
    written.append(csv_path)

    if not report["defeated"]:
        phases = ["build_system", "solve", "extend", "verify"]
        times = [report["timings"].get(p, 0.0) for p in phases]
        fig, ax = plt.subplots(figsize=(5.5, 3.5))
        ax.bar(phases, times, color="#37718e")
        ax.set_ylabel("seconds")
        ax.set_title("attack phases")
        fig.tight_layout()
        phase_path = outdir / "fig_phase_times.png"
        fig.savefig(phase_path, dpi=120)
        plt.close(fig)
        written.append(phase_path)

    counts = [r["injections"] for r in seq_rows]
    if counts:
        fig, ax = plt.subplots(figsize=(5.5, 3.5))
        ax.hist(counts, bins=min(30, max(5, len(set(counts)))), color="#c06e52")
        ax.set_xlabel("injections per sequence")
        ax.set_ylabel("sequences")
        ax.set_title("Las Vegas sequence cost")
        fig.tight_layout()
        hist_path = outdir / "fig_injections_histogram.png"
        fig.savefig(hist_path, dpi=120)
        plt.close(fig)
        written.append(hist_path)
    return written
