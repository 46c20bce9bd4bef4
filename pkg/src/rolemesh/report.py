"""Rendering of evaluation reports: delimited pair table plus figures.

Figures go to PNG files next to the delimited output; nothing here is
needed for the library API, only for the CLI report path.
"""

from __future__ import annotations

import json
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .evaluation import EvalReport, PairResult

PAIRS_FILE = "pairs.tsv"
REPORT_FILE = "report.json"
SCATTER_FIGURE = "gold_vs_model.png"
RANK_FIGURE = "rank_agreement.png"


def write_report_files(
    report: EvalReport, results: list[PairResult], out_dir: str
) -> list[str]:
    """Write report.json, the per-pair TSV, and the figures.

    Returns the paths written.
    """
    os.makedirs(out_dir, exist_ok=True)
    written = []

    path = os.path.join(out_dir, REPORT_FILE)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(report.to_dict(), fh, sort_keys=True, indent=2)
        fh.write("\n")
    written.append(path)

    path = os.path.join(out_dir, PAIRS_FILE)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("word1\tword2\tgold\tsimilarity\tstatus\n")
        for res in results:
            sim = "" if res.similarity is None else repr(res.similarity)
            status = "oov" if res.similarity is None else "ok"
            fh.write(
                f"{res.pair.w1}\t{res.pair.w2}\t{res.pair.gold!r}\t{sim}\t{status}\n"
            )
    written.append(path)

    written.extend(_render_figures(report, results, out_dir))
    return written


def _render_figures(
    report: EvalReport, results: list[PairResult], out_dir: str
) -> list[str]:
    used = [r for r in results if r.similarity is not None]
    if not used:
        return []
    golds = np.array([r.pair.gold for r in used])
    sims = np.array([r.similarity for r in used])

    paths = []
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    ax.scatter(golds, sims, s=18, alpha=0.75, edgecolors="none")
    ax.set_xlabel("gold similarity")
    ax.set_ylabel(f"model similarity ({report.mode})")
    ax.set_title(
        f"Spearman {report.spearman:.3f}  "
        f"({report.pairs_used} pairs, {report.oov_failures} OOV)"
    )
    fig.tight_layout()
    path = os.path.join(out_dir, SCATTER_FIGURE)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    paths.append(path)

    fig, ax = plt.subplots(figsize=(4.2, 4.0))
    gr = _ranks(golds)
    sr = _ranks(sims)
    ax.scatter(gr, sr, s=18, alpha=0.75, edgecolors="none")
    lim = (0, len(used) + 1)
    ax.plot(lim, lim, lw=0.8, ls="--", color="grey")
    ax.set_xlim(lim)
    ax.set_ylim(lim)
    ax.set_xlabel("gold rank")
    ax.set_ylabel("model rank")
    ax.set_title("rank agreement")
    fig.tight_layout()
    path = os.path.join(out_dir, RANK_FIGURE)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    paths.append(path)
    return paths


def _ranks(values: np.ndarray) -> np.ndarray:
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values))
    ranks[order] = np.arange(1, len(values) + 1)
    return ranks
