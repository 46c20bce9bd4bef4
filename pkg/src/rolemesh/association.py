"""Dense association embeddings: loading, cosine, neighbor search.

The embedding table supplies the similarity weights that drive
interpolation and OOV synthesis. Neighbor membership uses a strict
threshold on cosine similarity; the word itself always qualifies with
weight exactly 1 when it is among the candidates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Vocabulary
from .errors import EmbeddingFormatError, UnknownWordError


class DenseEmbeddings:
    """Word -> dense row table; rows are kept exactly as loaded."""

    def __init__(self, words: Sequence[str], vectors: np.ndarray):
        vectors = np.asarray(vectors, dtype=np.float64)
        if vectors.ndim != 2 or vectors.shape[0] != len(words):
            raise ValueError("vectors must be a (len(words), dim) array")
        self.words: list[str] = list(words)
        self.vectors = vectors
        self._index = {w: i for i, w in enumerate(self.words)}
        if len(self._index) != len(self.words):
            raise ValueError("duplicate words in embedding table")

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self._index

    def vector(self, word: str) -> np.ndarray:
        try:
            return self.vectors[self._index[word]]
        except KeyError:
            raise UnknownWordError(f"word not in embedding table: {word!r}") from None


@dataclass(frozen=True)
class NeighborSet:
    """Above-threshold associates of a target word, strongest first."""

    target: str
    items: tuple[tuple[str, float], ...]

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def words(self) -> list[str]:
        return [w for w, _ in self.items]


def load_embeddings(path: str) -> DenseEmbeddings:
    """Parse a word2vec-text file: `<count> <dim>` header, then rows."""
    words: list[str] = []
    rows: list[list[float]] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        parts = header.split()
        if len(parts) != 2:
            raise EmbeddingFormatError(f"{path}:1: malformed header: {header.strip()!r}")
        try:
            _count, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise EmbeddingFormatError(
                f"{path}:1: malformed header: {header.strip()!r}"
            ) from None
        if dim < 1:
            raise EmbeddingFormatError(f"{path}:1: dimension must be positive")
        for ln, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            fields = line.split()
            if len(fields) != dim + 1:
                raise EmbeddingFormatError(
                    f"{path}:{ln}: expected {dim} values, got {len(fields) - 1}"
                )
            word = fields[0]
            if word in seen:
                raise EmbeddingFormatError(f"{path}:{ln}: duplicate word {word!r}")
            try:
                values = [float(x) for x in fields[1:]]
            except ValueError:
                raise EmbeddingFormatError(
                    f"{path}:{ln}: non-numeric vector component"
                ) from None
            if not all(math.isfinite(v) for v in values):
                raise EmbeddingFormatError(f"{path}:{ln}: non-finite vector component")
            if not any(values):
                raise EmbeddingFormatError(f"{path}:{ln}: zero-norm row for {word!r}")
            seen.add(word)
            words.append(word)
            rows.append(values)
    return DenseEmbeddings(words, np.asarray(rows, dtype=np.float64))


def _cosine(u: np.ndarray, v: np.ndarray) -> float:
    # sqrt(uu * vv) keeps cos(u, u) at exactly 1.0 for identical rows.
    return float(np.dot(u, v) / math.sqrt(np.dot(u, u) * np.dot(v, v)))


def cos_a(emb: DenseEmbeddings, w1: str, w2: str) -> float:
    """Cosine similarity between two embedding rows."""
    return _cosine(emb.vector(w1), emb.vector(w2))


def neighbors(
    emb: DenseEmbeddings,
    target: str,
    candidates: Vocabulary | Sequence[str],
    threshold: float,
    cap: int | None = None,
) -> NeighborSet:
    """Candidate words whose cosine with `target` strictly exceeds `threshold`.

    Candidates outside the embedding table are ignored. The target itself
    is included with weight exactly 1.0 whenever it is a candidate.
    Ordering is weight-descending, ties broken by word; `cap` keeps only
    the strongest entries.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must lie strictly between 0 and 1")
    t = emb.vector(target)
    t_dot = float(np.dot(t, t))
    scored: list[tuple[str, float]] = []
    for word in candidates:
        if word not in emb:
            continue
        if word == target:
            scored.append((word, 1.0))
            continue
        v = emb.vector(word)
        cos = float(np.dot(t, v) / math.sqrt(t_dot * np.dot(v, v)))
        if cos > threshold:
            scored.append((word, cos))
    scored.sort(key=lambda item: (-item[1], item[0]))
    if cap is not None:
        scored = scored[:cap]
    return NeighborSet(target=target, items=tuple(scored))
