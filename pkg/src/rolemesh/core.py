"""Domain types and persisted model artifacts.

A model is a sparse word-by-role matrix together with its vocabulary and
role index. Matrices move through three stages: raw co-occurrence counts,
PPMI weights, and the refined (interpolated, rounded, squared) form.
All persisted files are UTF-8 text with LF line endings and deterministic
ordering, so identical inputs always produce byte-identical artifacts.
"""

from __future__ import annotations

import json
import os
import re
import shutil
import tempfile
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import (
    ModelFormatError,
    RoleFormatError,
    StageMismatchError,
    UnknownRoleError,
    UnknownWordError,
)

STAGE_COUNTS = "counts"
STAGE_PPMI = "ppmi"
STAGE_REFINED = "refined"
STAGES = (STAGE_COUNTS, STAGE_PPMI, STAGE_REFINED)

CORE_LABELS = frozenset(f"ARG{i}" for i in range(6))

# Fixed whitelist of adjunct functions; unknown ARGM-* labels are rejected.
ADJUNCT_FUNCTIONS = frozenset(
    {
        "LOC", "TMP", "MNR", "ADV", "DIS", "DIR", "CAU", "EXT", "PRP",
        "PRD", "GOL", "COM", "NEG", "MOD", "LVB", "REC", "ADJ",
    }
)
ADJUNCT_LABELS = frozenset(f"ARGM-{f}" for f in sorted(ADJUNCT_FUNCTIONS))
VALID_LABELS = CORE_LABELS | ADJUNCT_LABELS

_CORE_RE = re.compile(r"^ARG[0-5]$")
_ADJUNCT_RE = re.compile(r"^ARGM-[A-Z]{3}$")

MODEL_VERSION = 1
META_FILE = "meta.json"
VOCAB_FILE = "vocab.tsv"
ROLES_FILE = "roles.tsv"
MATRIX_FILE = "matrix.tsv"


def is_valid_label(label: str) -> bool:
    return label in VALID_LABELS


def validate_label(label: str) -> str:
    """Return `label` if it is an accepted core or adjunct label.

    Reference (R-ARG*) and continuation (C-ARG*) labels, out-of-range core
    arguments, and unlisted ARGM functions all raise RoleFormatError.
    """
    if label in VALID_LABELS:
        return label
    if _CORE_RE.match(label) or _ADJUNCT_RE.match(label):
        # Shape is right but not whitelisted (can't happen for core).
        raise RoleFormatError(f"argument label not in the accepted set: {label!r}")
    raise RoleFormatError(f"malformed argument label: {label!r}")


@dataclass(frozen=True, order=True)
class RoleContext:
    """A predicate lemma specialized by argument label, e.g. eat|ARG0."""

    predicate: str
    label: str

    def validate(self) -> "RoleContext":
        if not self.predicate or "|" in self.predicate or any(c.isspace() for c in self.predicate):
            raise RoleFormatError(f"invalid predicate lemma: {self.predicate!r}")
        validate_label(self.label)
        return self

    def render(self) -> str:
        return f"{self.predicate}|{self.label}"

    def __str__(self) -> str:
        return self.render()


def render_role(role: RoleContext) -> str:
    """Canonical textual form `<predicate>|<label>`."""
    return role.render()


def parse_role(text: str) -> RoleContext:
    """Inverse of :func:`render_role`; raises RoleFormatError when malformed."""
    parts = text.split("|")
    if len(parts) != 2:
        raise RoleFormatError(f"role must contain exactly one '|': {text!r}")
    predicate, label = parts
    return RoleContext(predicate, label).validate()


@dataclass(frozen=True)
class PasFrame:
    """One predicate with its labelled argument head tokens."""

    predicate_lemma: str
    args: tuple[tuple[str, tuple[str, ...]], ...]
    predicate_index: int | None = None


@dataclass(frozen=True)
class SentenceRecord:
    """One annotated sentence: surface tokens plus predicate-argument frames."""

    tokens: tuple[str, ...]
    frames: tuple[PasFrame, ...]


class Vocabulary:
    """Dense word <-> index map with per-word occurrence totals.

    Indices follow sorted word order, so the mapping depends only on the
    set of surviving words, never on input order.
    """

    def __init__(self, words: Sequence[str], counts: Sequence[int]):
        if len(words) != len(counts):
            raise ValueError("words and counts must have equal length")
        self.words: list[str] = list(words)
        self.counts = np.asarray(counts, dtype=np.int64)
        self._index = {w: i for i, w in enumerate(self.words)}
        if len(self._index) != len(self.words):
            raise ValueError("duplicate words in vocabulary")

    @classmethod
    def from_counts(cls, counts: dict[str, int]) -> "Vocabulary":
        words = sorted(counts)
        return cls(words, [counts[w] for w in words])

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self.words)

    def index(self, word: str) -> int:
        try:
            return self._index[word]
        except KeyError:
            raise UnknownWordError(f"unknown word: {word!r}") from None

    def word(self, idx: int) -> str:
        return self.words[idx]


class RoleIndex:
    """Dense role <-> index map with counts and per-label segments.

    Every role belongs to exactly one segment (its own argument label);
    segment pair totals are the sums of the member role counts.
    """

    def __init__(self, roles: Sequence[RoleContext], counts: Sequence[int]):
        if len(roles) != len(counts):
            raise ValueError("roles and counts must have equal length")
        self.roles: list[RoleContext] = list(roles)
        self.counts = np.asarray(counts, dtype=np.int64)
        self._index = {r: i for i, r in enumerate(self.roles)}
        if len(self._index) != len(self.roles):
            raise ValueError("duplicate roles in index")
        segments: dict[str, list[int]] = {}
        for i, r in enumerate(self.roles):
            segments.setdefault(r.label, []).append(i)
        self.segments: dict[str, np.ndarray] = {
            label: np.asarray(idx, dtype=np.int64) for label, idx in segments.items()
        }

    @classmethod
    def from_counts(cls, counts: dict[RoleContext, int]) -> "RoleIndex":
        roles = sorted(counts, key=lambda r: (r.predicate, r.label))
        return cls(roles, [counts[r] for r in roles])

    def __len__(self) -> int:
        return len(self.roles)

    def __contains__(self, role: RoleContext) -> bool:
        return role in self._index

    def __iter__(self) -> Iterator[RoleContext]:
        return iter(self.roles)

    def index(self, role: RoleContext) -> int:
        try:
            return self._index[role]
        except KeyError:
            raise UnknownRoleError(f"unknown role: {role.render()!r}") from None

    def role(self, idx: int) -> RoleContext:
        return self.roles[idx]

    def segment_total(self, label: str) -> int:
        idx = self.segments.get(label)
        return 0 if idx is None else int(self.counts[idx].sum())


class SparseRoleMatrix:
    """Word-by-role sparse matrix with non-negative values and a stage tag.

    Stored in canonical CSR form: sorted indices, no explicit zeros.
    """

    def __init__(self, csr: sp.csr_matrix, stage: str):
        if stage not in STAGES:
            raise ValueError(f"unknown stage: {stage!r}")
        csr = csr.tocsr().astype(np.float64)
        csr.sum_duplicates()
        csr.sort_indices()
        csr.eliminate_zeros()
        if csr.nnz and csr.data.min() < 0:
            raise ValueError("matrix values must be non-negative")
        self.csr = csr
        self.stage = stage

    @classmethod
    def from_triples(
        cls,
        shape: tuple[int, int],
        triples: Iterable[tuple[int, int, float]],
        stage: str,
    ) -> "SparseRoleMatrix":
        rows, cols, vals = [], [], []
        for i, j, v in triples:
            rows.append(i)
            cols.append(j)
            vals.append(v)
        csr = sp.csr_matrix(
            (np.asarray(vals, dtype=np.float64), (rows, cols)), shape=shape
        )
        return cls(csr, stage)

    @property
    def shape(self) -> tuple[int, int]:
        return self.csr.shape

    @property
    def nnz(self) -> int:
        return self.csr.nnz

    def require_stage(self, stage: str) -> None:
        if self.stage != stage:
            raise StageMismatchError(
                f"expected a {stage}-stage matrix, got {self.stage}"
            )

    def row(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Column indices and values of row `i`."""
        start, end = self.csr.indptr[i], self.csr.indptr[i + 1]
        return self.csr.indices[start:end], self.csr.data[start:end]

    def triples(self) -> Iterator[tuple[int, int, float]]:
        """All stored entries, strictly sorted by (row, column)."""
        indptr, indices, data = self.csr.indptr, self.csr.indices, self.csr.data
        for i in range(self.shape[0]):
            for k in range(indptr[i], indptr[i + 1]):
                yield i, int(indices[k]), float(data[k])

    def sparsity(self) -> float:
        """Fraction of zero cells, in percent."""
        cells = self.shape[0] * self.shape[1]
        if cells == 0:
            return 100.0
        return 100.0 * (1.0 - self.nnz / cells)


@dataclass(frozen=True)
class MeshRelation:
    """One inferred relation between two words sharing a predicate."""

    predicate: str
    score: float
    role_pair: tuple[RoleContext, RoleContext]
    feature_values: tuple[float, float]


@dataclass
class ModelMeta:
    """Contents of meta.json; fields are None until their stage sets them."""

    stage: str
    min_count: int | None = None
    log_base: str | None = None
    ppmi_mode: str | None = None
    threshold: float | None = None
    rounding: bool | None = None
    squared: bool | None = None
    include_self: bool | None = None
    version: int = MODEL_VERSION

    def to_dict(self) -> dict:
        return {
            "stage": self.stage,
            "min_count": self.min_count,
            "log_base": self.log_base,
            "ppmi_mode": self.ppmi_mode,
            "threshold": self.threshold,
            "rounding": self.rounding,
            "squared": self.squared,
            "include_self": self.include_self,
            "version": self.version,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ModelMeta":
        known = {f for f in cls.__dataclass_fields__}  # noqa: C416
        return cls(**{k: v for k, v in d.items() if k in known})


def format_value(v: float) -> str:
    """Shortest decimal that round-trips; integral values print as integers."""
    if v == int(v):
        return str(int(v))
    return repr(float(v))


def _write_text(path: str, lines: Iterable[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def save_model(
    out_dir: str,
    vocab: Vocabulary,
    roles: RoleIndex,
    matrix: SparseRoleMatrix,
    meta: ModelMeta,
    force: bool = False,
) -> None:
    """Persist a model directory atomically (write to temp, rename).

    Refuses to overwrite an existing directory unless `force` is set; a
    failed write never leaves a partial directory at `out_dir`.
    """
    if meta.stage != matrix.stage:
        raise StageMismatchError(
            f"meta stage {meta.stage!r} does not match matrix stage {matrix.stage!r}"
        )
    out_dir = os.path.abspath(out_dir)
    if os.path.exists(out_dir) and not force:
        raise FileExistsError(f"output directory exists: {out_dir}")
    parent = os.path.dirname(out_dir) or "."
    os.makedirs(parent, exist_ok=True)
    tmp = tempfile.mkdtemp(prefix=".rolemesh-", dir=parent)
    try:
        with open(
            os.path.join(tmp, META_FILE), "w", encoding="utf-8", newline="\n"
        ) as fh:
            json.dump(meta.to_dict(), fh, sort_keys=True, indent=2)
            fh.write("\n")
        _write_text(
            os.path.join(tmp, VOCAB_FILE),
            (
                f"{i}\t{vocab.word(i)}\t{int(vocab.counts[i])}"
                for i in range(len(vocab))
            ),
        )
        _write_text(
            os.path.join(tmp, ROLES_FILE),
            (
                f"{i}\t{roles.role(i).predicate}\t{roles.role(i).label}\t{int(roles.counts[i])}"
                for i in range(len(roles))
            ),
        )
        _write_text(
            os.path.join(tmp, MATRIX_FILE),
            (f"{i}\t{j}\t{format_value(v)}" for i, j, v in matrix.triples()),
        )
        if os.path.exists(out_dir):
            shutil.rmtree(out_dir)
        os.replace(tmp, out_dir)
    except BaseException:
        shutil.rmtree(tmp, ignore_errors=True)
        raise


def load_model(
    model_dir: str,
) -> tuple[Vocabulary, RoleIndex, SparseRoleMatrix, ModelMeta]:
    """Load a persisted model directory; raises ModelFormatError on damage."""
    meta_path = os.path.join(model_dir, META_FILE)
    try:
        with open(meta_path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError:
        raise ModelFormatError(f"not a model directory (no {META_FILE}): {model_dir}")
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"invalid {META_FILE}: {exc}") from exc
    meta = ModelMeta.from_dict(raw)
    if meta.stage not in STAGES:
        raise ModelFormatError(f"unknown stage in {META_FILE}: {meta.stage!r}")

    words, wcounts = [], []
    for ln, parts in _read_tsv(os.path.join(model_dir, VOCAB_FILE), 3):
        idx, word, count = parts
        if int(idx) != len(words):
            raise ModelFormatError(f"{VOCAB_FILE}:{ln}: non-dense index {idx}")
        words.append(word)
        wcounts.append(int(count))
    vocab = Vocabulary(words, wcounts)

    rlist, rcounts = [], []
    for ln, parts in _read_tsv(os.path.join(model_dir, ROLES_FILE), 4):
        idx, predicate, label, count = parts
        if int(idx) != len(rlist):
            raise ModelFormatError(f"{ROLES_FILE}:{ln}: non-dense index {idx}")
        rlist.append(RoleContext(predicate, label).validate())
        rcounts.append(int(count))
    roles = RoleIndex(rlist, rcounts)

    rows, cols, vals = [], [], []
    for ln, parts in _read_tsv(os.path.join(model_dir, MATRIX_FILE), 3):
        i, j, v = int(parts[0]), int(parts[1]), float(parts[2])
        if not (0 <= i < len(vocab) and 0 <= j < len(roles)):
            raise ModelFormatError(f"{MATRIX_FILE}:{ln}: index out of range")
        rows.append(i)
        cols.append(j)
        vals.append(v)
    csr = sp.csr_matrix(
        (np.asarray(vals, dtype=np.float64), (rows, cols)),
        shape=(len(vocab), len(roles)),
    )
    matrix = SparseRoleMatrix(csr, meta.stage)
    return vocab, roles, matrix, meta


def _read_tsv(path: str, arity: int) -> Iterator[tuple[int, list[str]]]:
    try:
        fh = open(path, encoding="utf-8")
    except FileNotFoundError:
        raise ModelFormatError(f"missing model file: {path}")
    with fh:
        for ln, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != arity:
                raise ModelFormatError(
                    f"{path}:{ln}: expected {arity} columns, got {len(parts)}"
                )
            yield ln, parts
