"""Acceptance suite: one test per release criterion.

Each test prints a visible PASS/FAIL line through the conftest hook.
Tolerances are pinned here and nowhere else.
"""

import filecmp
import json
import math
import os
import random
import time

import numpy as np
import pytest

import rolemesh as rm
from rolemesh.cli import main
from rolemesh.core import PasFrame, SentenceRecord, SparseRoleMatrix
from rolemesh.evaluation import evaluate_pairs

from conftest import BENCHMARK, CORPUS, EMBEDDINGS, GOLDEN_DIR, WHITELIST
from oracles import (
    dense_ppmi,
    dense_refine,
    gram_singular_values,
    naive_mesh,
    round_half_down_ref,
    spearman_ref,
)
from test_weighting import random_count_model, segment_labels
from test_refine import emb_from, random_toy


def test_criterion_01_table2_exactness():
    """The annotated drinking sentence yields exactly its four pairs."""
    record = SentenceRecord(
        tokens=("John", "drinks", "red", "wine", "slowly"),
        frames=(
            PasFrame(
                "drink",
                (
                    ("ARG0", ("john",)),
                    ("ARG1", ("red", "wine")),
                    ("ARGM-MNR", ("slowly",)),
                ),
                predicate_index=1,
            ),
        ),
    )
    cfg = rm.IngestConfig(whitelist=frozenset({"drink"}), min_count=1)
    pairs = [(r.render(), w) for r, w in rm.extract_contexts(record, cfg)]
    assert pairs == [
        ("drink|ARG0", "john"),
        ("drink|ARG1", "red"),
        ("drink|ARG1", "wine"),
        ("drink|ARGM-MNR", "slowly"),
    ]


def test_criterion_02_ppmi_oracle():
    """Arg-specific and plain PPMI match dense brute force on 100+ toys."""
    rng = random.Random(20240201)
    for trial in range(110):
        vocab, roles, counts, _ = random_count_model(rng)
        dense = counts.csr.toarray()
        labels = segment_labels(roles)
        for mode in ("arg", "plain"):
            got = rm.ppmi(counts, vocab, roles, rm.PpmiConfig(mode=mode))
            want = dense_ppmi(dense, labels, mode=mode)
            assert np.allclose(got.csr.toarray(), want, atol=1e-9), (
                f"trial {trial} mode {mode}"
            )
        # single-segment inputs: the two modes agree exactly
        if len(set(labels)) == 1:
            arg = rm.ppmi(counts, vocab, roles, rm.PpmiConfig(mode="arg"))
            plain = rm.ppmi(counts, vocab, roles, rm.PpmiConfig(mode="plain"))
            assert (arg.csr != plain.csr).nnz == 0
        # segment-wise count scaling leaves PPMI unchanged
        label = rng.choice(sorted(roles.segments))
        seg = set(roles.segments[label].tolist())
        k = rng.randint(2, 9)
        scaled = SparseRoleMatrix.from_triples(
            counts.shape,
            ((i, j, v * k if j in seg else v) for i, j, v in counts.triples()),
            stage="counts",
        )
        base = rm.ppmi(counts, vocab, roles, rm.PpmiConfig(mode="arg"))
        resc = rm.ppmi(scaled, vocab, roles, rm.PpmiConfig(mode="arg"))
        assert np.allclose(resc.csr.toarray(), base.csr.toarray(), atol=1e-12)
    # dedicated single-segment inputs: plain and arg-specific agree exactly
    for _ in range(15):
        records = []
        for _ in range(rng.randint(10, 80)):
            pred = rng.choice(["chase", "drink", "eat", "hold", "sell"])
            word = rng.choice([f"w{i}" for i in range(8)])
            records.append(
                SentenceRecord(
                    tokens=(word,),
                    frames=(PasFrame(pred, (("ARG1", (word,)),)),),
                )
            )
        vocab, roles, counts, _ = rm.build_counts(records, rm.IngestConfig(min_count=1))
        assert len(roles.segments) == 1
        arg = rm.ppmi(counts, vocab, roles, rm.PpmiConfig(mode="arg"))
        plain = rm.ppmi(counts, vocab, roles, rm.PpmiConfig(mode="plain"))
        assert (arg.csr != plain.csr).nnz == 0


def test_criterion_03_half_down_rounding():
    """ceil(x - 0.5) semantics, halves down, idempotence, monotonicity."""
    for k in range(0, 1001):
        assert rm.round_half_down(k + 0.5) == k
        assert rm.round_half_down(float(k)) == k
    rng = random.Random(3)
    values = [rng.uniform(0, 1e6) for _ in range(10_000)]
    for x in values:
        assert rm.round_half_down(x) == round_half_down_ref(x)
    for _ in range(10_000):
        a, b = rng.uniform(0, 1e4), rng.uniform(0, 1e4)
        lo, hi = sorted((a, b))
        assert rm.round_half_down(lo) <= rm.round_half_down(hi)


def test_criterion_04_interpolation_oracle():
    """Refinement matches the dense round/interpolate/round/square oracle."""
    rng = random.Random(20240404)
    for trial in range(110):
        vocab, roles, m, table = random_toy(rng)
        emb = emb_from(table)
        cfg = rm.RefineConfig(threshold=rng.choice([0.35, 0.5, 0.65]))
        got = rm.refine(m, vocab, roles, emb, cfg)
        want = dense_refine(
            m.csr.toarray(), vocab.words, table, threshold=cfg.threshold
        )
        assert np.allclose(got.csr.toarray(), want, atol=1e-9), f"trial {trial}"

    # self-only neighbor sets are fixpoints before squaring
    vocab, roles, m, _ = random_toy(rng, n_words=4, n_roles=4)
    lonely = {w: [1.0 if i == k else 0.0 for i in range(4)]
              for k, w in enumerate(vocab.words)}
    emb = emb_from(lonely)
    rounded = np.ceil(m.csr.toarray() - 0.5)
    out = rm.refine(
        m, vocab, roles, emb, rm.RefineConfig(square=False)
    )
    assert np.allclose(out.csr.toarray(), np.ceil(rounded - 0.5), atol=1e-12)

    # row-processing order cannot matter: a word-permuted model refines to
    # the row-permuted result
    vocab, roles, m, table = random_toy(rng, n_words=8, n_roles=6)
    emb = emb_from(table)
    cfg = rm.RefineConfig()
    base = rm.refine(m, vocab, roles, emb, cfg).csr.toarray()
    renames = {w: f"z{i}_{w}" for i, w in enumerate(reversed(vocab.words))}
    vocab2 = rm.Vocabulary([renames[w] for w in vocab.words], vocab.counts)
    table2 = {renames[w]: v for w, v in table.items()}
    m2 = SparseRoleMatrix(m.csr.copy(), stage="ppmi")
    perm = sorted(range(len(vocab2)), key=lambda i: vocab2.words[i])
    vocab3 = rm.Vocabulary(
        [vocab2.words[i] for i in perm], [vocab2.counts[i] for i in perm]
    )
    m3 = SparseRoleMatrix(m2.csr[perm], stage="ppmi")
    out3 = rm.refine(m3, vocab3, roles, emb_from(table2), cfg).csr.toarray()
    inverse = np.argsort(perm)
    assert np.allclose(out3[inverse], base, atol=1e-12)


def test_criterion_05_meshing_oracle():
    """Meshing equals the naive double loop on 100 toys, all label pairs."""
    rng = random.Random(20240505)
    labels = ["ARG0", "ARG1", "ARG2", "ARGM-MNR", "ARGM-LOC"]
    preds = ["chase", "drink", "eat", "hold", "read", "sell", "buy"]
    for trial in range(100):
        words = [f"w{i}" for i in range(rng.randint(2, 7))]
        role_pool = [f"{p}|{l}" for p in preds for l in labels]
        roles = rng.sample(role_pool, rng.randint(2, 14))
        rows = {}
        for w in words:
            row = {r: float(rng.randint(1, 99)) for r in roles if rng.random() < 0.5}
            if row:
                rows[w] = row
        vocab = rm.Vocabulary.from_counts({w: 1 for w in words})
        ridx = rm.RoleIndex.from_counts({rm.parse_role(r): 1 for r in roles})
        matrix = SparseRoleMatrix.from_triples(
            (len(vocab), len(ridx)),
            [
                (vocab.index(w), ridx.index(rm.parse_role(r)), v)
                for w, row in rows.items()
                for r, v in row.items()
            ],
            stage="refined",
        )
        model = rm.QueryModel(matrix, vocab, ridx)
        w1, w2 = rng.choice(words), rng.choice(words)
        for a1 in labels:
            for a2 in labels:
                got = model.mesh(w1, w2, a1, a2)
                row1 = {tuple(r.split("|")): v for r, v in rows.get(w1, {}).items()}
                row2 = {tuple(r.split("|")): v for r, v in rows.get(w2, {}).items()}
                want = naive_mesh(row1, row2, a1, a2)
                assert [(r.predicate, r.score) for r in got] == want
                for rel in got:
                    assert rel.score == rel.feature_values[0] * rel.feature_values[1]
                scores = [r.score for r in got]
                assert scores == sorted(scores, reverse=True)

    # the worked toy example
    vocab = rm.Vocabulary.from_counts({"man": 1, "cup": 1})
    ridx = rm.RoleIndex.from_counts(
        {
            rm.parse_role("drink|ARG0"): 1,
            rm.parse_role("drink|ARG1"): 1,
            rm.parse_role("hold|ARG1"): 1,
        }
    )
    matrix = SparseRoleMatrix.from_triples(
        (2, 3),
        [
            (vocab.index("man"), ridx.index(rm.parse_role("drink|ARG0")), 4.0),
            (vocab.index("cup"), ridx.index(rm.parse_role("drink|ARG1")), 2.0),
            (vocab.index("cup"), ridx.index(rm.parse_role("hold|ARG1")), 3.0),
        ],
        stage="refined",
    )
    model = rm.QueryModel(matrix, vocab, ridx)
    got = model.mesh("man", "cup", "ARG0", "ARG1")
    assert [(r.predicate, r.score) for r in got] == [("drink", 8.0)]


def test_criterion_06_spearman():
    """Identity, reversal, tie oracle, monotone-transform invariance."""
    assert rm.spearman([1, 2, 3, 9], [2, 4, 8, 16]) == pytest.approx(1.0, abs=1e-12)
    assert rm.spearman([1, 2, 3, 9], [16, 8, 4, 2]) == pytest.approx(-1.0, abs=1e-12)
    rng = random.Random(20240606)
    for _ in range(300):
        n = rng.randint(2, 25)
        xs = [rng.randint(0, 8) / 2 for _ in range(n)]
        ys = [rng.randint(0, 8) / 2 for _ in range(n)]
        if len(set(xs)) < 2 or len(set(ys)) < 2:
            continue
        assert rm.spearman(xs, ys) == pytest.approx(spearman_ref(xs, ys), abs=1e-9)
    for _ in range(100):
        n = rng.randint(3, 50)
        xs = [rng.uniform(-10, 10) for _ in range(n)]
        ys = [rng.uniform(-10, 10) for _ in range(n)]
        base = rm.spearman(xs, ys)
        assert rm.spearman([math.exp(x / 5) for x in xs], ys) == pytest.approx(
            base, abs=1e-9
        )
        assert rm.spearman(xs, [y**3 for y in ys]) == pytest.approx(base, abs=1e-9)


def test_criterion_07_concat_identity(mini_refined, toy_embeddings):
    """Concatenated cosine = mean of per-half cosines, pairwise, 1e-9."""
    vocab, roles, refined = mini_refined
    pairs = rm.load_benchmark(BENCHMARK)
    _, concat = evaluate_pairs(
        refined, vocab, roles, pairs, "concat", embeddings=toy_embeddings
    )
    _, sparse = evaluate_pairs(refined, vocab, roles, pairs, "sparse")
    checked = 0
    for res_c, res_s in zip(concat, sparse):
        if res_c.similarity is None:
            continue
        p = res_c.pair
        u = toy_embeddings.vector(p.w1)
        v = toy_embeddings.vector(p.w2)
        cos_dense = float(np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v)))
        assert res_c.similarity == pytest.approx(
            (res_s.similarity + cos_dense) / 2, abs=1e-9
        )
        checked += 1
    assert checked >= 5


def test_criterion_08_svd():
    """Singular values vs Gram eigen oracle; beats random projections."""
    rng = np.random.default_rng(20240808)
    for _ in range(10):
        dense = np.abs(rng.normal(size=(8, 6)))
        m = SparseRoleMatrix.from_triples(
            dense.shape,
            [(i, j, dense[i, j]) for i in range(8) for j in range(6)],
            stage="refined",
        )
        emb = rm.svd_reduce(m, 3)
        got = np.sqrt((emb * emb).sum(axis=0))
        want = gram_singular_values(dense)[:3]
        assert np.allclose(got, want, atol=1e-6)

        # full-rank reconstruction error < 1e-8
        full = rm.svd_reduce(m, 6)
        q, _ = np.linalg.qr(full)
        assert np.linalg.norm(dense - q @ (q.T @ dense)) < 1e-8

    wins = 0
    for _ in range(10):
        dense = np.abs(rng.normal(size=(8, 6)))
        m = SparseRoleMatrix.from_triples(
            dense.shape,
            [(i, j, dense[i, j]) for i in range(8) for j in range(6)],
            stage="refined",
        )
        emb = rm.svd_reduce(m, 3)
        q, _ = np.linalg.qr(emb)
        err_svd = np.linalg.norm(dense - q @ (q.T @ dense))
        rq, _ = np.linalg.qr(rng.normal(size=(8, 3)))
        err_rand = np.linalg.norm(dense - rq @ (rq.T @ dense))
        if err_svd <= err_rand:
            wins += 1
    assert wins == 10


def test_criterion_09_end_to_end_determinism(tmp_path):
    """Two runs x worker counts {1, 4}: byte-identical artifacts, < 10 s."""
    start = time.monotonic()
    outputs = []
    for run_id in ("a", "b"):
        for workers in (1, 4):
            tag = f"{run_id}{workers}"
            ppmi = tmp_path / f"ppmi_{tag}"
            refined = tmp_path / f"refined_{tag}"
            assert main([
                "build", CORPUS, "--out", str(ppmi), "--whitelist", WHITELIST,
                "--min-count", "2", "--workers", str(workers),
            ]) == 0
            assert main([
                "refine", str(ppmi), "--embeddings", EMBEDDINGS,
                "--out", str(refined), "--workers", str(workers),
            ]) == 0
            outputs.append((ppmi, refined))
    names = ("meta.json", "vocab.tsv", "roles.tsv", "matrix.tsv")
    first_ppmi, first_refined = outputs[0]
    for ppmi, refined in outputs[1:]:
        for name in names:
            assert filecmp.cmp(
                str(first_ppmi / name), str(ppmi / name), shallow=False
            )
            assert filecmp.cmp(
                str(first_refined / name), str(refined / name), shallow=False
            )
    # and the artifacts equal the frozen goldens
    for name in names:
        assert filecmp.cmp(
            str(first_ppmi / name),
            os.path.join(GOLDEN_DIR, "ppmi", name),
            shallow=False,
        )
        assert filecmp.cmp(
            str(first_refined / name),
            os.path.join(GOLDEN_DIR, "refined", name),
            shallow=False,
        )
    elapsed = time.monotonic() - start
    assert elapsed < 10.0, f"pipeline sweep took {elapsed:.1f}s"


def test_criterion_10_oov_accounting(mini_refined, toy_embeddings):
    """pairs_used + oov_failures = total; synthesis strictly helps."""
    vocab, roles, refined = mini_refined
    pairs = rm.load_benchmark(BENCHMARK)
    seen = []
    for mode, kwargs in (
        ("sparse", {}),
        ("sparse", {"embeddings": toy_embeddings, "synthesize": True}),
        ("svd", {"svd_rank": 3}),
        ("concat", {"embeddings": toy_embeddings}),
        ("concat", {"embeddings": toy_embeddings, "synthesize": True}),
    ):
        report, _ = evaluate_pairs(refined, vocab, roles, pairs, mode, **kwargs)
        assert report.pairs_used + report.oov_failures == len(pairs)
        seen.append((mode, bool(kwargs.get("synthesize")), report.oov_failures))
    plain = dict(((m, s), f) for m, s, f in seen)
    assert plain[("sparse", True)] < plain[("sparse", False)]
    assert plain[("concat", True)] < plain[("concat", False)]
