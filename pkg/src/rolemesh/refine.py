"""Refinement of the PPMI matrix by association-weighted interpolation.

The pipeline per row is: half-down round, re-compute the row as the
cosine-weighted average of its neighbors' rows (reading a frozen snapshot
of the rounded matrix, so row order never matters), round again, then
square elementwise. Rounding keeps the representation sparse; squaring
enlarges the influence of strong co-occurrences. Words without an
embedding row pass through untouched.

The same machinery synthesizes rows for words outside the matrix
vocabulary: neighbors are averaged (the word itself cannot participate),
then rounded and squared exactly like in-vocabulary rows.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from . import association
from .core import RoleIndex, SparseRoleMatrix, Vocabulary
from .errors import UninterpolatableWordError, UnknownWordError

DEFAULT_THRESHOLD = 0.5


@dataclass(frozen=True)
class RefineConfig:
    threshold: float = DEFAULT_THRESHOLD
    rounding: bool = True
    square: bool = True
    include_self: bool = True
    neighbor_cap: int | None = None

    def __post_init__(self):
        if not 0.0 < self.threshold < 1.0:
            raise ValueError("threshold must lie strictly between 0 and 1")


def round_half_down(x: float) -> int:
    """Nearest integer with exact halves rounding down: ceil(x - 0.5)."""
    if x < 0:
        raise ValueError("round_half_down is defined for non-negative input")
    return int(math.ceil(x - 0.5))


def _round_array(values: np.ndarray) -> np.ndarray:
    return np.ceil(values - 0.5)


def _rounded_copy(csr: sp.csr_matrix) -> sp.csr_matrix:
    out = csr.copy()
    out.data = _round_array(out.data)
    out.eliminate_zeros()
    return out


def _weighted_average_row(
    csr: sp.csr_matrix,
    vocab: Vocabulary,
    neighbor_set: association.NeighborSet,
    n_cols: int,
) -> np.ndarray:
    """Dense alpha-weighted average of the neighbors' rows.

    Accumulation follows the neighbor set's deterministic order, so the
    result is identical however rows are scheduled across workers.
    """
    acc = np.zeros(n_cols)
    denom = 0.0
    for word, alpha in neighbor_set:
        i = vocab.index(word)
        start, end = csr.indptr[i], csr.indptr[i + 1]
        acc[csr.indices[start:end]] += alpha * csr.data[start:end]
        denom += alpha
    acc /= denom
    return acc


def interpolate_row(
    matrix: SparseRoleMatrix,
    vocab: Vocabulary,
    emb: association.DenseEmbeddings,
    word: str,
    cfg: RefineConfig,
) -> tuple[np.ndarray, np.ndarray]:
    """Re-compute one word's row as the weighted average of its neighbors.

    Returns the (column indices, values) of the resulting sparse row.
    Raises UninterpolatableWordError when no neighbor clears the
    threshold (only possible for words outside the matrix vocabulary or
    with self-inclusion disabled).
    """
    nset = association.neighbors(
        emb, word, vocab, cfg.threshold, cap=cfg.neighbor_cap
    )
    items = nset.items
    if not cfg.include_self:
        items = tuple((w, a) for w, a in items if w != word)
    if not items:
        raise UninterpolatableWordError(
            f"no neighbors above threshold {cfg.threshold} for {word!r}"
        )
    dense = _weighted_average_row(
        matrix.csr, vocab, association.NeighborSet(word, items), matrix.shape[1]
    )
    idx = np.nonzero(dense)[0]
    return idx, dense[idx]


def _finish_row(values: np.ndarray, cfg: RefineConfig) -> np.ndarray:
    if cfg.rounding:
        values = _round_array(values)
    if cfg.square:
        values = values * values
    return values


def refine(
    matrix: SparseRoleMatrix,
    vocab: Vocabulary,
    roles: RoleIndex,
    emb: association.DenseEmbeddings,
    cfg: RefineConfig,
    workers: int = 1,
) -> SparseRoleMatrix:
    """Produce the refined matrix from a PPMI-stage matrix.

    Interpolation reads the rounded-but-uninterpolated snapshot for every
    row; there is no cascading of updated rows.
    """
    matrix.require_stage("ppmi")
    n_rows, n_cols = matrix.shape
    if n_rows != len(vocab) or n_cols != len(roles):
        raise ValueError("matrix dimensions do not match vocabulary/role index")

    snapshot = _rounded_copy(matrix.csr) if cfg.rounding else matrix.csr
    frozen = SparseRoleMatrix(snapshot, stage="ppmi")

    def compute_row(i: int) -> tuple[np.ndarray, np.ndarray]:
        word = vocab.word(i)
        if word in emb:
            try:
                idx, vals = interpolate_row(frozen, vocab, emb, word, cfg)
            except UninterpolatableWordError:
                # No qualifying neighbors (self-inclusion disabled):
                # interpolation is a no-op for this row.
                idx, vals = frozen.row(i)
        else:
            idx, vals = frozen.row(i)
        vals = _finish_row(np.asarray(vals, dtype=np.float64), cfg)
        keep = np.nonzero(vals)[0]
        return np.asarray(idx)[keep], vals[keep]

    if workers > 1 and n_rows > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(compute_row, range(n_rows)))
    else:
        results = [compute_row(i) for i in range(n_rows)]

    indptr = np.zeros(n_rows + 1, dtype=np.int64)
    for i, (idx, _) in enumerate(results):
        indptr[i + 1] = indptr[i] + len(idx)
    indices = np.concatenate([idx for idx, _ in results]) if results else np.array([])
    data = np.concatenate([vals for _, vals in results]) if results else np.array([])
    csr = sp.csr_matrix(
        (data.astype(np.float64), indices.astype(np.int64), indptr),
        shape=(n_rows, n_cols),
    )
    return SparseRoleMatrix(csr, stage="refined")


def synthesize_oov(
    matrix: SparseRoleMatrix,
    vocab: Vocabulary,
    emb: association.DenseEmbeddings,
    word: str,
    cfg: RefineConfig,
) -> tuple[np.ndarray, np.ndarray]:
    """Build a row for a word outside the matrix vocabulary.

    Works on a refined matrix: stored values are un-squared back to the
    pre-square scale, neighbor rows are averaged, and the result goes
    through the same rounding and squaring as in-vocabulary rows. The
    synthesized row is returned, never persisted.
    """
    matrix.require_stage("refined")
    if word in vocab:
        raise ValueError(f"{word!r} is already in the matrix vocabulary")
    if word not in emb:
        raise UnknownWordError(f"word not in embedding table: {word!r}")

    base = matrix.csr
    if cfg.square:
        base = base.copy()
        base.data = np.sqrt(base.data)
        if cfg.rounding:
            # Values are squares of integers; kill any sqrt rounding dust.
            base.data = np.rint(base.data)

    nset = association.neighbors(emb, word, vocab, cfg.threshold, cap=cfg.neighbor_cap)
    if not nset.items:
        raise UninterpolatableWordError(
            f"no neighbors above threshold {cfg.threshold} for {word!r}"
        )
    dense = _weighted_average_row(base, vocab, nset, matrix.shape[1])
    vals = _finish_row(dense, cfg)
    idx = np.nonzero(vals)[0]
    return idx, vals[idx]
