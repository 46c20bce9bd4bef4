"""Count matrix -> PPMI matrix, plain or per-argument-label.

In argument-specific mode the columns are partitioned by argument label
and PMI is computed independently inside each segment:

    pmi(w, r) = log( n(w, r) * C_seg / (n_seg(w) * n(r)) )

where n_seg(w) is the word's pair count restricted to the segment and
C_seg is the segment's total pair mass. Plain mode is the same formula
over a single global segment. Entries with pmi <= 0 are dropped, so the
output is at least as sparse as the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .core import RoleIndex, SparseRoleMatrix, Vocabulary

MODE_PLAIN = "plain"
MODE_ARG = "arg"
_MODE_ALIASES = {"plain": MODE_PLAIN, "arg": MODE_ARG, "arg_specific": MODE_ARG}

_LOG_FNS = {"e": math.log, "2": math.log2, "10": math.log10}


@dataclass(frozen=True)
class PpmiConfig:
    mode: str = MODE_ARG
    log_base: str = "e"

    def __post_init__(self):
        if self.mode not in _MODE_ALIASES:
            raise ValueError(f"unknown ppmi mode: {self.mode!r}")
        if self.log_base not in _LOG_FNS:
            raise ValueError(f"log_base must be one of {sorted(_LOG_FNS)}")

    @property
    def canonical_mode(self) -> str:
        return _MODE_ALIASES[self.mode]


def ppmi(
    matrix: SparseRoleMatrix,
    vocab: Vocabulary,
    roles: RoleIndex,
    cfg: PpmiConfig,
) -> SparseRoleMatrix:
    """Weight a counts-stage matrix, preserving its dimensions."""
    matrix.require_stage("counts")
    n_words, n_roles = matrix.shape
    if n_words != len(vocab) or n_roles != len(roles):
        raise ValueError("matrix dimensions do not match vocabulary/role index")
    log = _LOG_FNS[cfg.log_base]

    if cfg.canonical_mode == MODE_ARG:
        seg_labels = sorted(roles.segments)
        seg_of_col = np.empty(n_roles, dtype=np.int64)
        for s, label in enumerate(seg_labels):
            seg_of_col[roles.segments[label]] = s
        n_segs = len(seg_labels)
    else:
        seg_of_col = np.zeros(n_roles, dtype=np.int64)
        n_segs = 1

    coo = matrix.csr.tocoo()
    col_mass = np.zeros(n_roles)
    np.add.at(col_mass, coo.col, coo.data)
    word_seg_mass = np.zeros((n_segs, n_words))
    np.add.at(word_seg_mass, (seg_of_col[coo.col], coo.row), coo.data)
    seg_total = word_seg_mass.sum(axis=1)

    rows, cols, vals = [], [], []
    # Entry-at-a-time scalar math keeps results identical across worker
    # counts and chunkings.
    for i, j, v in zip(coo.row, coo.col, coo.data):
        s = seg_of_col[j]
        value = log((v * seg_total[s]) / (word_seg_mass[s, i] * col_mass[j]))
        if value > 0.0:
            rows.append(i)
            cols.append(j)
            vals.append(value)

    csr = sp.csr_matrix(
        (np.asarray(vals, dtype=np.float64), (rows, cols)),
        shape=(n_words, n_roles),
    )
    return SparseRoleMatrix(csr, stage="ppmi")
