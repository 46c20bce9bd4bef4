#!/usr/bin/env python3
"""Freeze golden outputs for the bundled mini corpus (run once).

Every artifact is validated against the naive dense oracles in
tests/oracles.py before being written, and all values that feed a
rounding step are checked to sit a safe margin away from exact
half-integers, so last-ulp float differences can never flip a rounded
golden value.
"""

import io
import json
import os
import shutil
import sys
from contextlib import redirect_stdout

import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.join(HERE, "..")
DATA = os.path.join(ROOT, "data")
GOLDEN = os.path.join(ROOT, "tests", "golden")
sys.path.insert(0, os.path.join(ROOT, "tests"))

import rolemesh as rm
import rolemesh.cli as cli
from oracles import (
    dense_ppmi,
    dense_refine,
    naive_counts,
    naive_pairs,
    spearman_ref,
)

CORPUS = os.path.join(DATA, "mini_corpus.jsonl")
WHITELIST = os.path.join(DATA, "verbs.txt")
EMBEDDINGS = os.path.join(DATA, "toy_embeddings.txt")
BENCHMARK = os.path.join(DATA, "benchmark.tsv")

MIN_COUNT = 2
HALF_MARGIN = 1e-6


def assert_half_margin(values, where):
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return
    frac = np.abs(values - np.floor(values) - 0.5)
    worst = frac.min()
    assert worst > HALF_MARGIN, (
        f"{where}: value within {worst:.2e} of a half-integer; "
        "golden bytes would be fragile"
    )


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(argv)
    assert code == 0, f"cli {argv} exited {code}"
    return buf.getvalue()


def main():
    if os.path.exists(GOLDEN):
        shutil.rmtree(GOLDEN)
    os.makedirs(GOLDEN)

    whitelist = rm.load_whitelist(WHITELIST)
    cfg = rm.IngestConfig(whitelist=whitelist, min_count=MIN_COUNT)
    vocab, roles, counts, _ = rm.build_counts(CORPUS, cfg)

    # --- counts stage vs brute-force pair counting -----------------------
    with open(CORPUS, encoding="utf-8") as fh:
        raw = [json.loads(line) for line in fh if line.strip()]
    words, wcounts, roles_ref, rcounts, dense_counts = naive_counts(
        naive_pairs(raw, whitelist), MIN_COUNT
    )
    assert vocab.words == words
    assert list(vocab.counts) == wcounts
    assert [(r.predicate, r.label) for r in roles.roles] == roles_ref
    assert list(roles.counts) == rcounts
    assert (counts.csr.toarray() == dense_counts).all()
    rm.save_model(
        os.path.join(GOLDEN, "counts"),
        vocab,
        roles,
        counts,
        rm.ModelMeta(stage="counts", min_count=MIN_COUNT),
    )

    # --- ppmi stage vs dense oracle --------------------------------------
    ppmi = rm.ppmi(counts, vocab, roles, rm.PpmiConfig(mode="arg"))
    want = dense_ppmi(dense_counts, [r.label for r in roles.roles], mode="arg")
    assert np.allclose(ppmi.csr.toarray(), want, atol=1e-12)
    assert_half_margin(ppmi.csr.data, "ppmi values")
    rm.save_model(
        os.path.join(GOLDEN, "ppmi"),
        vocab,
        roles,
        ppmi,
        rm.ModelMeta(stage="ppmi", min_count=MIN_COUNT, log_base="e", ppmi_mode="arg"),
    )

    # --- refined stage vs dense oracle ------------------------------------
    emb = rm.load_embeddings(EMBEDDINGS)
    table = {w: list(emb.vector(w)) for w in emb.words}
    rcfg = rm.RefineConfig()
    refined = rm.refine(ppmi, vocab, roles, emb, rcfg)
    want = dense_refine(ppmi.csr.toarray(), vocab.words, table)
    assert np.allclose(refined.csr.toarray(), want, atol=1e-12)
    # margin check on the values the second rounding sees: interpolate the
    # rounded snapshot without rounding or squaring
    rounded = np.ceil(ppmi.csr.toarray() - 0.5)
    interp = dense_refine(rounded, vocab.words, table, rounding=False, square=False)
    assert_half_margin(interp[interp != 0], "interpolated values")
    rm.save_model(
        os.path.join(GOLDEN, "refined"),
        vocab,
        roles,
        refined,
        rm.ModelMeta(
            stage="refined",
            min_count=MIN_COUNT,
            log_base="e",
            ppmi_mode="arg",
            threshold=rcfg.threshold,
            rounding=rcfg.rounding,
            squared=rcfg.square,
            include_self=rcfg.include_self,
        ),
    )

    # --- frozen CLI outputs ----------------------------------------------
    refined_dir = os.path.join(GOLDEN, "refined")
    outputs = {
        "query_top_roles_tea.txt": [
            "query", refined_dir, "top-roles", "tea", "-k", "5"
        ],
        "query_top_words_drink_arg1.txt": [
            "query", refined_dir, "top-words", "drink|ARG1", "-k", "5"
        ],
        "query_mesh_man_cup.txt": [
            "query", refined_dir, "mesh", "man", "cup",
            "--arg1", "ARG0", "--arg2", "ARG1",
        ],
        "query_similar_wine.txt": [
            "query", refined_dir, "similar", "wine", "-k", "5"
        ],
        "query_contrast_wine_tea.txt": [
            "query", refined_dir, "contrast", "wine", "tea", "-k", "5"
        ],
        "eval_sparse.json": [
            "eval", refined_dir, BENCHMARK, "--mode", "sparse", "--json"
        ],
        "eval_sparse_synth.json": [
            "eval", refined_dir, BENCHMARK, "--mode", "sparse", "--json",
            "--embeddings", EMBEDDINGS, "--synthesize-oov",
        ],
        "eval_svd3.json": [
            "eval", refined_dir, BENCHMARK, "--mode", "svd", "--svd-rank", "3",
            "--json",
        ],
        "eval_concat.json": [
            "eval", refined_dir, BENCHMARK, "--mode", "concat",
            "--embeddings", EMBEDDINGS, "--json",
        ],
    }
    for name, argv in outputs.items():
        text = run_cli(argv)
        with open(os.path.join(GOLDEN, name), "w", encoding="utf-8", newline="") as fh:
            fh.write(text)

    # cross-check the frozen sparse eval report against the oracle
    with open(os.path.join(GOLDEN, "eval_sparse.json"), encoding="utf-8") as fh:
        report = json.load(fh)
    pairs = rm.load_benchmark(BENCHMARK)
    golds, sims = [], []
    dense_ref = refined.csr.toarray()
    widx = {w: i for i, w in enumerate(vocab.words)}
    for p in pairs:
        if p.w1 in widx and p.w2 in widx:
            u, v = dense_ref[widx[p.w1]], dense_ref[widx[p.w2]]
            nu, nv = np.linalg.norm(u), np.linalg.norm(v)
            sims.append(float(u @ v / (nu * nv)) if nu and nv else 0.0)
            golds.append(p.gold)
    assert report["pairs_used"] == len(golds)
    assert report["pairs_used"] + report["oov_failures"] == len(pairs)
    assert abs(report["spearman"] - spearman_ref(golds, sims)) < 1e-9

    print(f"golden files written to {GOLDEN}")


if __name__ == "__main__":
    main()
