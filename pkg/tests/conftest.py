import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import rolemesh as rm

HERE = os.path.dirname(os.path.abspath(__file__))
DATA_DIR = os.path.join(HERE, "..", "data")
GOLDEN_DIR = os.path.join(HERE, "golden")

CORPUS = os.path.join(DATA_DIR, "mini_corpus.jsonl")
WHITELIST = os.path.join(DATA_DIR, "verbs.txt")
EMBEDDINGS = os.path.join(DATA_DIR, "toy_embeddings.txt")
BENCHMARK = os.path.join(DATA_DIR, "benchmark.tsv")


@pytest.fixture(scope="session")
def whitelist():
    return rm.load_whitelist(WHITELIST)


@pytest.fixture(scope="session")
def toy_embeddings():
    return rm.load_embeddings(EMBEDDINGS)


@pytest.fixture(scope="session")
def mini_counts(whitelist):
    vocab, roles, counts, stats = rm.build_counts(
        CORPUS, rm.IngestConfig(whitelist=whitelist, min_count=2)
    )
    return vocab, roles, counts, stats


@pytest.fixture(scope="session")
def mini_ppmi(mini_counts):
    vocab, roles, counts, _ = mini_counts
    matrix = rm.ppmi(counts, vocab, roles, rm.PpmiConfig(mode="arg"))
    return vocab, roles, matrix


@pytest.fixture(scope="session")
def mini_refined(mini_ppmi, toy_embeddings):
    vocab, roles, matrix = mini_ppmi
    refined = rm.refine(matrix, vocab, roles, toy_embeddings, rm.RefineConfig())
    return vocab, roles, refined


@pytest.fixture(scope="session")
def mini_query(mini_refined, toy_embeddings):
    vocab, roles, refined = mini_refined
    return rm.QueryModel(refined, vocab, roles, embeddings=toy_embeddings)


def pytest_runtest_logreport(report):
    """One visible pass/fail line per acceptance criterion."""
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return
    number, _, label = name.removeprefix("test_criterion_").partition("_")
    outcome = "PASS" if report.passed else "FAIL"
    print(
        f"\n[acceptance] criterion {number} ({label.replace('_', ' ')}): {outcome}",
        flush=True,
    )
