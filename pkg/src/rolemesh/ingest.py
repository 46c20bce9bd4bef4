"""Streaming corpus ingestion: JSONL sentence records -> count matrix.

Filters follow the extraction contract: whitelisted predicates only,
core + accepted adjunct labels only, everything lowercased, one pair per
argument token. Words and roles whose total pair count falls below
`min_count` are dropped, together with every pair touching them; the
trim decision is made on untrimmed totals (no iterative re-trimming).
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .core import (
    PasFrame,
    RoleContext,
    RoleIndex,
    SentenceRecord,
    SparseRoleMatrix,
    Vocabulary,
    is_valid_label,
)
from .errors import CorpusFormatError, EmptyModelError

DEFAULT_MIN_COUNT = 100


@dataclass(frozen=True)
class IngestConfig:
    """Knobs for extraction and frequency trimming."""

    whitelist: frozenset[str] | None = None
    min_count: int = DEFAULT_MIN_COUNT
    accepted_labels: frozenset[str] | None = None  # None = all valid labels

    def __post_init__(self):
        if self.min_count < 1:
            raise ValueError("min_count must be >= 1")
        if self.whitelist is not None and not self.whitelist:
            raise ValueError("whitelist must be non-empty when provided")

    def accepts_label(self, label: str) -> bool:
        if not is_valid_label(label):
            return False
        return self.accepted_labels is None or label in self.accepted_labels

    def accepts_predicate(self, lemma: str) -> bool:
        return self.whitelist is None or lemma in self.whitelist


@dataclass
class IngestStats:
    """Counters accumulated while streaming the corpus."""

    sentences: int = 0
    frames_total: int = 0
    frames_kept: int = 0
    frames_skipped_whitelist: int = 0
    frames_skipped_invalid: int = 0
    args_skipped_label: int = 0
    args_skipped_empty: int = 0
    pairs_extracted: int = 0
    pairs_kept: int = 0
    label_warnings: Counter = field(default_factory=Counter)

    def merge(self, other: "IngestStats") -> None:
        self.sentences += other.sentences
        self.frames_total += other.frames_total
        self.frames_kept += other.frames_kept
        self.frames_skipped_whitelist += other.frames_skipped_whitelist
        self.frames_skipped_invalid += other.frames_skipped_invalid
        self.args_skipped_label += other.args_skipped_label
        self.args_skipped_empty += other.args_skipped_empty
        self.pairs_extracted += other.pairs_extracted
        self.pairs_kept += other.pairs_kept
        self.label_warnings.update(other.label_warnings)


def load_whitelist(path: str) -> frozenset[str]:
    """One lemma per line; `#` starts a comment."""
    lemmas = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                lemmas.add(line.lower())
    return frozenset(lemmas)


def parse_record(obj: dict) -> SentenceRecord:
    """Build a SentenceRecord from one decoded JSONL object."""
    tokens = obj.get("tokens")
    frames_raw = obj.get("frames")
    if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
        raise CorpusFormatError("record field 'tokens' must be a list of strings")
    if not isinstance(frames_raw, list):
        raise CorpusFormatError("record field 'frames' must be a list")
    frames = []
    for fr in frames_raw:
        if not isinstance(fr, dict):
            raise CorpusFormatError("frame entries must be objects")
        lemma = fr.get("predicate_lemma")
        args_raw = fr.get("args", [])
        if not isinstance(lemma, str) or not isinstance(args_raw, list):
            raise CorpusFormatError("frame must have predicate_lemma and args")
        args = []
        for a in args_raw:
            if (
                not isinstance(a, dict)
                or not isinstance(a.get("label"), str)
                or not isinstance(a.get("head_tokens"), list)
            ):
                raise CorpusFormatError("argument must have label and head_tokens")
            args.append((a["label"], tuple(str(t) for t in a["head_tokens"])))
        idx = fr.get("predicate_index")
        frames.append(
            PasFrame(
                predicate_lemma=lemma,
                args=tuple(args),
                predicate_index=idx if isinstance(idx, int) else None,
            )
        )
    return SentenceRecord(tokens=tuple(tokens), frames=tuple(frames))


def read_corpus(path: str) -> Iterator[SentenceRecord]:
    """Yield records from a PAS JSONL file; blank lines are skipped."""
    with open(path, encoding="utf-8") as fh:
        for ln, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"{path}:{ln}: invalid JSON: {exc}") from exc
            try:
                yield parse_record(obj)
            except CorpusFormatError as exc:
                raise CorpusFormatError(f"{path}:{ln}: {exc}") from exc


def extract_contexts(
    record: SentenceRecord,
    cfg: IngestConfig,
    stats: IngestStats | None = None,
) -> list[tuple[RoleContext, str]]:
    """All (role, word) pairs contributed by one sentence record.

    Pair order follows (frame order, argument order, token order). Frames
    with non-whitelisted or malformed predicates and arguments with
    rejected labels contribute nothing; they are tallied in `stats`.
    """
    stats = stats if stats is not None else IngestStats()
    stats.sentences += 1
    pairs: list[tuple[RoleContext, str]] = []
    for frame in record.frames:
        stats.frames_total += 1
        lemma = frame.predicate_lemma.strip().lower()
        if not lemma or "|" in lemma or any(c.isspace() for c in lemma):
            stats.frames_skipped_invalid += 1
            continue
        if not cfg.accepts_predicate(lemma):
            stats.frames_skipped_whitelist += 1
            continue
        stats.frames_kept += 1
        for label, head_tokens in frame.args:
            if not cfg.accepts_label(label):
                stats.args_skipped_label += 1
                stats.label_warnings[label] += 1
                continue
            if not head_tokens:
                stats.args_skipped_empty += 1
                continue
            role = RoleContext(lemma, label)
            for token in head_tokens:
                word = token.lower()
                if word:
                    pairs.append((role, word))
    stats.pairs_extracted += len(pairs)
    return pairs


def _count_chunk(
    lines: list[tuple[int, str]], path: str, cfg: IngestConfig
) -> tuple[Counter, IngestStats]:
    counts: Counter = Counter()
    stats = IngestStats()
    for ln, line in lines:
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError(f"{path}:{ln}: invalid JSON: {exc}") from exc
        try:
            record = parse_record(obj)
        except CorpusFormatError as exc:
            raise CorpusFormatError(f"{path}:{ln}: {exc}") from exc
        counts.update(extract_contexts(record, cfg, stats))
    return counts, stats


def _pair_counts_from_file(
    path: str, cfg: IngestConfig, workers: int
) -> tuple[Counter, IngestStats]:
    # Shards are merged by addition, so totals do not depend on chunking.
    chunk_size = 2048
    stats = IngestStats()
    counts: Counter = Counter()
    with open(path, encoding="utf-8") as fh:
        numbered = [
            (ln, line)
            for ln, line in enumerate(fh, start=1)
            if line.strip()
        ]
    chunks = [
        numbered[i : i + chunk_size] for i in range(0, len(numbered), chunk_size)
    ]
    if workers <= 1 or len(chunks) <= 1:
        for chunk in chunks:
            c, s = _count_chunk(chunk, path, cfg)
            counts.update(c)
            stats.merge(s)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for c, s in pool.map(
                lambda ch: _count_chunk(ch, path, cfg), chunks
            ):
                counts.update(c)
                stats.merge(s)
    return counts, stats


def build_counts(
    records: str | Iterable[SentenceRecord],
    cfg: IngestConfig,
    workers: int = 1,
) -> tuple[Vocabulary, RoleIndex, SparseRoleMatrix, IngestStats]:
    """Accumulate the trimmed co-occurrence count matrix.

    `records` is either a path to a PAS JSONL file or an iterable of
    records. Vocabulary counts are the untrimmed totals the trim decision
    used; role counts are the stored column mass after trimming, so that
    segment totals always equal the stored count mass.
    """
    if isinstance(records, str):
        pair_counts, stats = _pair_counts_from_file(records, cfg, workers)
    else:
        pair_counts = Counter()
        stats = IngestStats()
        for record in records:
            pair_counts.update(extract_contexts(record, cfg, stats))

    word_totals: Counter = Counter()
    role_totals: Counter = Counter()
    for (role, word), n in pair_counts.items():
        word_totals[word] += n
        role_totals[role] += n

    kept_words = {w: c for w, c in word_totals.items() if c >= cfg.min_count}
    kept_roles = {r for r, c in role_totals.items() if c >= cfg.min_count}

    surviving = {
        (role, word): n
        for (role, word), n in pair_counts.items()
        if word in kept_words and role in kept_roles
    }
    if not surviving:
        raise EmptyModelError(
            f"no pairs survive min_count={cfg.min_count}; empty model"
        )
    stats.pairs_kept = sum(surviving.values())

    vocab = Vocabulary.from_counts(kept_words)
    stored_role_mass: Counter = Counter()
    for (role, _), n in surviving.items():
        stored_role_mass[role] += n
    # Roles that passed the threshold keep their slot even if trimming
    # removed all of their mass.
    role_counts = {r: stored_role_mass.get(r, 0) for r in kept_roles}
    roles = RoleIndex.from_counts(role_counts)

    matrix = SparseRoleMatrix.from_triples(
        (len(vocab), len(roles)),
        (
            (vocab.index(word), roles.index(role), float(n))
            for (role, word), n in surviving.items()
        ),
        stage="counts",
    )
    return vocab, roles, matrix, stats
