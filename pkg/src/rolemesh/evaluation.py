"""Word-similarity benchmark harness.

Evaluates a model against gold similarity pairs via Spearman rank
correlation, in three spaces: the sparse rows themselves, an SVD
reduction, or the concatenation of L2-normalized sparse and dense
halves. Pairs with an unresolvable word are skipped and counted as OOV
failures; an optional flag synthesizes missing rows from the embedding
table first.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.stats

from .refine import RefineConfig, synthesize_oov
from .association import DenseEmbeddings
from .core import RoleIndex, SparseRoleMatrix, Vocabulary
from .errors import (
    BenchmarkFormatError,
    CorrelationUndefinedError,
    UnknownWordError,
)

MODE_SPARSE = "sparse"
MODE_SVD = "svd"
MODE_CONCAT = "concat"
MODES = (MODE_SPARSE, MODE_SVD, MODE_CONCAT)


@dataclass(frozen=True)
class BenchmarkPair:
    w1: str
    w2: str
    gold: float


@dataclass(frozen=True)
class EvalReport:
    spearman: float
    pairs_used: int
    oov_failures: int
    mode: str

    def to_dict(self) -> dict:
        return {
            "spearman": self.spearman,
            "pairs_used": self.pairs_used,
            "oov_failures": self.oov_failures,
            "mode": self.mode,
        }


@dataclass(frozen=True)
class PairResult:
    """Per-pair detail used by report rendering."""

    pair: BenchmarkPair
    similarity: float | None  # None = OOV failure


def load_benchmark(path: str) -> list[BenchmarkPair]:
    """TSV `word1<TAB>word2<TAB>score`; `#` lines are comments."""
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for ln, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise BenchmarkFormatError(
                    f"{path}:{ln}: expected 3 tab-separated columns, got {len(parts)}"
                )
            try:
                gold = float(parts[2])
            except ValueError:
                raise BenchmarkFormatError(
                    f"{path}:{ln}: non-numeric score {parts[2]!r}"
                ) from None
            if not math.isfinite(gold):
                raise BenchmarkFormatError(f"{path}:{ln}: score must be finite")
            pairs.append(BenchmarkPair(parts[0].lower(), parts[1].lower(), gold))
    return pairs


def spearman(xs, ys) -> float:
    """Spearman rank correlation with average ranks for ties."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise CorrelationUndefinedError("inputs must be equal-length vectors")
    if len(xs) < 2:
        raise CorrelationUndefinedError("need at least 2 observations")
    with warnings.catch_warnings():
        # constant input surfaces as nan and is rejected below
        warnings.simplefilter("ignore", scipy.stats.ConstantInputWarning)
        rho = scipy.stats.spearmanr(xs, ys).statistic
    if not math.isfinite(rho):
        raise CorrelationUndefinedError(
            "correlation undefined (constant input ranking)"
        )
    return float(rho)


def svd_reduce(matrix: SparseRoleMatrix, k: int) -> np.ndarray:
    """Dense rank-k embeddings: left singular vectors scaled by the
    singular values. Sign convention: the largest-magnitude component of
    each right singular vector is made positive."""
    emb, _ = _svd_with_basis(matrix, k)
    return emb


def _svd_with_basis(
    matrix: SparseRoleMatrix, k: int
) -> tuple[np.ndarray, np.ndarray]:
    n, m = matrix.shape
    if not 1 <= k <= min(n, m):
        raise ValueError(f"svd rank {k} out of range for {n}x{m} matrix")
    u, s, vt = np.linalg.svd(matrix.csr.toarray(), full_matrices=False)
    for i in range(vt.shape[0]):
        j = int(np.argmax(np.abs(vt[i])))
        if vt[i, j] < 0:
            vt[i] = -vt[i]
            u[:, i] = -u[:, i]
    basis = vt[:k].T  # columns are right singular vectors
    return u[:, :k] * s[:k], basis


class _SparseVec:
    __slots__ = ("idx", "vals", "norm")

    def __init__(self, idx: np.ndarray, vals: np.ndarray):
        self.idx = np.asarray(idx, dtype=np.int64)
        self.vals = np.asarray(vals, dtype=np.float64)
        self.norm = float(np.sqrt(np.dot(self.vals, self.vals)))

    def dot(self, other: "_SparseVec") -> float:
        common, ia, ib = np.intersect1d(
            self.idx, other.idx, assume_unique=True, return_indices=True
        )
        if len(common) == 0:
            return 0.0
        return float(np.dot(self.vals[ia], other.vals[ib]))


def _cosine_sparse(a: _SparseVec, b: _SparseVec) -> float:
    if a.norm == 0.0 or b.norm == 0.0:
        return 0.0
    return a.dot(b) / (a.norm * b.norm)


def _cosine_dense(u: np.ndarray, v: np.ndarray) -> float:
    nu = float(np.sqrt(np.dot(u, u)))
    nv = float(np.sqrt(np.dot(v, v)))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v)) / (nu * nv)


class _ConcatVec:
    """L2-normalized sparse half followed by L2-normalized dense half."""

    __slots__ = ("sparse", "dense", "norm")

    def __init__(self, sparse: _SparseVec, dense: np.ndarray):
        self.sparse = _SparseVec(sparse.idx, sparse.vals / sparse.norm)
        self.dense = dense / np.sqrt(np.dot(dense, dense))
        self.norm = math.sqrt(
            float(np.dot(self.sparse.vals, self.sparse.vals))
            + float(np.dot(self.dense, self.dense))
        )

    def cosine(self, other: "_ConcatVec") -> float:
        dot = self.sparse.dot(other.sparse) + float(np.dot(self.dense, other.dense))
        return dot / (self.norm * other.norm)


class _Space:
    """Resolves words to vectors for one evaluation mode."""

    def __init__(
        self,
        matrix: SparseRoleMatrix,
        vocab: Vocabulary,
        mode: str,
        embeddings: DenseEmbeddings | None,
        svd_rank: int | None,
        synthesize: bool,
        refine_cfg: RefineConfig,
    ):
        self.matrix = matrix
        self.vocab = vocab
        self.mode = mode
        self.embeddings = embeddings
        self.synthesize = synthesize and embeddings is not None
        self.refine_cfg = refine_cfg
        self._synth_cache: dict[str, tuple[np.ndarray, np.ndarray] | None] = {}
        if mode == MODE_SVD:
            self._svd_rows, self._svd_basis = _svd_with_basis(matrix, svd_rank)

    def _sparse_row(self, word: str) -> tuple[np.ndarray, np.ndarray] | None:
        if word in self.vocab:
            return self.matrix.row(self.vocab.index(word))
        if not self.synthesize or word not in self.embeddings:
            return None
        if word not in self._synth_cache:
            try:
                self._synth_cache[word] = synthesize_oov(
                    self.matrix, self.vocab, self.embeddings, word, self.refine_cfg
                )
            except UnknownWordError:
                self._synth_cache[word] = None
        return self._synth_cache[word]

    def vector(self, word: str):
        """The word's vector in this space, or None when unresolvable."""
        row = self._sparse_row(word)
        if self.mode == MODE_SPARSE:
            return None if row is None else _SparseVec(*row)
        if self.mode == MODE_SVD:
            if row is None:
                return None
            if word in self.vocab:
                return self._svd_rows[self.vocab.index(word)]
            idx, vals = row
            dense = np.zeros(self.matrix.shape[1])
            dense[idx] = vals
            return dense @ self._svd_basis
        # concat: the word must live in both halves
        if row is None or self.embeddings is None or word not in self.embeddings:
            return None
        sparse = _SparseVec(*row)
        if sparse.norm == 0.0:
            return None
        return _ConcatVec(sparse, self.embeddings.vector(word))

    def similarity(self, u, v) -> float:
        if self.mode == MODE_SPARSE:
            return _cosine_sparse(u, v)
        if self.mode == MODE_SVD:
            return _cosine_dense(u, v)
        return u.cosine(v)


def evaluate_pairs(
    matrix: SparseRoleMatrix,
    vocab: Vocabulary,
    roles: RoleIndex,
    pairs: list[BenchmarkPair],
    mode: str,
    embeddings: DenseEmbeddings | None = None,
    svd_rank: int | None = None,
    synthesize: bool = False,
    refine_cfg: RefineConfig | None = None,
) -> tuple[EvalReport, list[PairResult]]:
    """Evaluate and keep per-pair details for reporting."""
    if mode not in MODES:
        raise ValueError(f"unknown evaluation mode: {mode!r}")
    if mode == MODE_CONCAT and embeddings is None:
        raise ValueError("concat mode requires an embedding table")
    if mode == MODE_SVD and svd_rank is None:
        raise ValueError("svd mode requires svd_rank")
    space = _Space(
        matrix,
        vocab,
        mode,
        embeddings,
        svd_rank,
        synthesize,
        refine_cfg or RefineConfig(),
    )
    results: list[PairResult] = []
    golds, sims = [], []
    failures = 0
    for pair in pairs:
        u = space.vector(pair.w1)
        v = space.vector(pair.w2)
        if u is None or v is None:
            failures += 1
            results.append(PairResult(pair, None))
            continue
        sim = space.similarity(u, v)
        golds.append(pair.gold)
        sims.append(sim)
        results.append(PairResult(pair, sim))
    if len(golds) < 2:
        raise CorrelationUndefinedError(
            f"only {len(golds)} of {len(pairs)} pairs are resolvable "
            f"({failures} OOV failures); correlation undefined"
        )
    rho = spearman(golds, sims)
    report = EvalReport(
        spearman=rho,
        pairs_used=len(golds),
        oov_failures=failures,
        mode=mode,
    )
    return report, results


def evaluate(
    matrix: SparseRoleMatrix,
    vocab: Vocabulary,
    roles: RoleIndex,
    pairs: list[BenchmarkPair],
    mode: str,
    embeddings: DenseEmbeddings | None = None,
    svd_rank: int | None = None,
    synthesize: bool = False,
    refine_cfg: RefineConfig | None = None,
) -> EvalReport:
    """Benchmark the model; see :func:`evaluate_pairs` for details."""
    report, _ = evaluate_pairs(
        matrix, vocab, roles, pairs, mode, embeddings, svd_rank, synthesize, refine_cfg
    )
    return report
