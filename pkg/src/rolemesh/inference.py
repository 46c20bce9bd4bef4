"""Query layer over a refined model: meshing, introspection, neighbors.

Meshing pairs one word's features under one argument label with another
word's features under a second label; whenever the two features share a
predicate, a relation is emitted whose score is the product of the two
feature values. Because each (predicate, label) pair names at most one
role, every predicate appears at most once per query.
"""

from __future__ import annotations

import numpy as np

from .refine import DEFAULT_THRESHOLD, RefineConfig, synthesize_oov
from .association import DenseEmbeddings
from .core import (
    MeshRelation,
    ModelMeta,
    RoleContext,
    RoleIndex,
    SparseRoleMatrix,
    Vocabulary,
    load_model,
    validate_label,
)
from .errors import UnknownWordError

__all__ = ["QueryModel"]


class QueryModel:
    """Immutable read view of a refined model, indexed both ways."""

    def __init__(
        self,
        matrix: SparseRoleMatrix,
        vocab: Vocabulary,
        roles: RoleIndex,
        embeddings: DenseEmbeddings | None = None,
        refine_cfg: RefineConfig | None = None,
    ):
        matrix.require_stage("refined")
        self.matrix = matrix
        self.vocab = vocab
        self.roles = roles
        self.embeddings = embeddings
        self.refine_cfg = refine_cfg or RefineConfig()
        self._csc = matrix.csr.tocsc()
        self._csc.sort_indices()
        sq = matrix.csr.multiply(matrix.csr)
        self._row_norms = np.sqrt(np.asarray(sq.sum(axis=1)).ravel())
        self._oov_rows: dict[str, tuple[np.ndarray, np.ndarray]] = {}

    @classmethod
    def load(
        cls, model_dir: str, embeddings: DenseEmbeddings | None = None
    ) -> "QueryModel":
        vocab, roles, matrix, meta = load_model(model_dir)
        return cls(matrix, vocab, roles, embeddings, _cfg_from_meta(meta))

    # -- row resolution -------------------------------------------------

    def resolvable(self, word: str) -> bool:
        if word in self.vocab:
            return True
        if self.embeddings is None or word not in self.embeddings:
            return False
        try:
            self._synthesized(word)
            return True
        except UnknownWordError:
            return False

    def row(self, word: str) -> tuple[np.ndarray, np.ndarray]:
        """Sparse row for `word`, synthesizing out-of-vocabulary words
        through the embedding table when one is attached."""
        if word in self.vocab:
            return self.matrix.row(self.vocab.index(word))
        if self.embeddings is not None and word in self.embeddings:
            return self._synthesized(word)
        raise UnknownWordError(f"unknown word: {word!r}")

    def _synthesized(self, word: str) -> tuple[np.ndarray, np.ndarray]:
        if word not in self._oov_rows:
            self._oov_rows[word] = synthesize_oov(
                self.matrix, self.vocab, self.embeddings, word, self.refine_cfg
            )
        return self._oov_rows[word]

    # -- queries ---------------------------------------------------------

    def mesh(
        self, w1: str, w2: str, a1: str, a2: str
    ) -> list[MeshRelation]:
        """Relations between `w1` as `a1` and `w2` as `a2`, best first."""
        validate_label(a1)
        validate_label(a2)
        feats1 = self._label_features(w1, a1)
        feats2 = self._label_features(w2, a2)
        relations = []
        for pred, (r1, v1) in feats1.items():
            hit = feats2.get(pred)
            if hit is None:
                continue
            r2, v2 = hit
            relations.append(
                MeshRelation(
                    predicate=pred,
                    score=v1 * v2,
                    role_pair=(r1, r2),
                    feature_values=(v1, v2),
                )
            )
        relations.sort(key=lambda rel: (-rel.score, rel.predicate))
        return relations

    def _label_features(
        self, word: str, label: str
    ) -> dict[str, tuple[RoleContext, float]]:
        idx, vals = self.row(word)
        out: dict[str, tuple[RoleContext, float]] = {}
        for j, v in zip(idx, vals):
            role = self.roles.role(int(j))
            if role.label == label:
                out[role.predicate] = (role, float(v))
        return out

    def top_roles(self, word: str, k: int) -> list[tuple[RoleContext, float]]:
        """The k strongest role contexts of a word."""
        idx, vals = self.row(word)
        entries = [(self.roles.role(int(j)), float(v)) for j, v in zip(idx, vals)]
        entries.sort(key=lambda e: (-e[1], e[0].render()))
        return entries[: max(k, 0)]

    def top_words(self, role: RoleContext, k: int) -> list[tuple[str, float]]:
        """The k strongest words for a role context."""
        j = self.roles.index(role)
        start, end = self._csc.indptr[j], self._csc.indptr[j + 1]
        entries = [
            (self.vocab.word(int(i)), float(v))
            for i, v in zip(self._csc.indices[start:end], self._csc.data[start:end])
        ]
        entries.sort(key=lambda e: (-e[1], e[0]))
        return entries[: max(k, 0)]

    def contrast(
        self, w1: str, w2: str, k: int
    ) -> list[tuple[RoleContext, float, str]]:
        """Role contexts most distinguishing two words, by absolute
        difference; the third element names the dominating word."""
        i1, v1 = self.row(w1)
        i2, v2 = self.row(w2)
        r1 = dict(zip((int(j) for j in i1), (float(v) for v in v1)))
        r2 = dict(zip((int(j) for j in i2), (float(v) for v in v2)))
        entries = []
        for j in set(r1) | set(r2):
            a, b = r1.get(j, 0.0), r2.get(j, 0.0)
            if a == b:
                continue
            role = self.roles.role(j)
            entries.append((role, abs(a - b), w1 if a > b else w2))
        entries.sort(key=lambda e: (-e[1], e[0].render()))
        return entries[: max(k, 0)]

    def similar_words(self, word: str, k: int) -> list[tuple[str, float]]:
        """The k nearest vocabulary words by sparse cosine (self excluded)."""
        idx, vals = self.row(word)
        dense = np.zeros(self.matrix.shape[1])
        dense[idx] = vals
        norm = float(np.sqrt(np.dot(dense, dense)))
        dots = self.matrix.csr.dot(dense)
        sims = np.zeros(len(self.vocab))
        if norm > 0.0:
            mask = self._row_norms > 0.0
            sims[mask] = dots[mask] / (self._row_norms[mask] * norm)
        entries = [
            (self.vocab.word(i), float(sims[i]))
            for i in range(len(self.vocab))
            if self.vocab.word(i) != word
        ]
        entries.sort(key=lambda e: (-e[1], e[0]))
        return entries[: max(k, 0)]


def _cfg_from_meta(meta: ModelMeta) -> RefineConfig:
    return RefineConfig(
        threshold=meta.threshold if meta.threshold is not None else DEFAULT_THRESHOLD,
        rounding=bool(meta.rounding) if meta.rounding is not None else True,
        square=bool(meta.squared) if meta.squared is not None else True,
        include_self=bool(meta.include_self) if meta.include_self is not None else True,
    )
