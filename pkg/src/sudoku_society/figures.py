"""PNG renderings of the four report tables.

Presentation layer only: the CSVs written by :mod:`sudoku_society.metrics`
remain the machine-readable contract.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .agent import SKILL_BY_CODE
from .metrics import ReportTables, ScoreMatrix, SkillUsageTable, EffectivenessTable, UsageByMemoryTable

_DPI = 150


def _skill_labels(codes) -> list[str]:
    return [f"{SKILL_BY_CODE[code].name}\n({code})" for code in codes]


def render_popularity(table: SkillUsageTable, path) -> Path:
    codes = sorted(table.counts)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(range(len(codes)), [table.counts[c] for c in codes], color="#4878a8")
    ax.set_xticks(range(len(codes)), _skill_labels(codes), fontsize=8)
    ax.set_ylabel("loading events")
    ax.set_title("Skill popularity over the tournament")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return Path(path)


def render_effectiveness(table: EffectivenessTable, path) -> Path:
    codes = sorted(table.mass)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(range(len(codes)), [table.mass[c] for c in codes], color="#a85448")
    ax.set_xticks(range(len(codes)), _skill_labels(codes), fontsize=8)
    ax.set_ylabel("top-score mass")
    ax.set_title("Skill effectiveness over the tournament")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return Path(path)


def render_usage_by_memory(table: UsageByMemoryTable, path) -> Path:
    mcs = sorted(table.counts)
    name = SKILL_BY_CODE[table.skill_code].name
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(range(len(mcs)), [table.counts[mc] for mc in mcs], color="#5a995a")
    ax.set_xticks(range(len(mcs)), [str(mc) for mc in mcs], fontsize=8)
    ax.set_xlabel("situation-awareness memory (units)")
    ax.set_ylabel("games loading the skill")
    ax.set_title(f"Usage of {name} (code {table.skill_code}) by memory size")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return Path(path)


def render_score_matrix(matrix: ScoreMatrix, path) -> Path:
    data = [list(matrix.mean[mc]) for mc in matrix.mc_values]
    fig, ax = plt.subplots(figsize=(7, 5))
    image = ax.imshow(data, aspect="auto", origin="lower", vmin=0.0, vmax=1.0, cmap="viridis")
    ax.set_xticks(range(len(matrix.clue_counts)), [str(c) for c in matrix.clue_counts], fontsize=8)
    ax.set_yticks(range(len(matrix.mc_values)), [str(mc) for mc in matrix.mc_values], fontsize=8)
    ax.set_xlabel("round difficulty (initial clues)")
    ax.set_ylabel("situation-awareness memory (units)")
    ax.set_title("Mean final score per agent and round")
    fig.colorbar(image, ax=ax, label="mean final score")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return Path(path)


def render_all(tables: ReportTables, out_dir) -> list[Path]:
    out = Path(out_dir)
    return [
        render_popularity(tables.popularity, out / "popularity.png"),
        render_effectiveness(tables.effectiveness, out / "effectiveness.png"),
        render_usage_by_memory(tables.usage_by_memory, out / "usage_by_memory.png"),
        render_score_matrix(tables.score_matrix, out / "score_matrix.png"),
    ]
