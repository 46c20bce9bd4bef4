import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import rolemesh as rm
from rolemesh.errors import EmbeddingFormatError, UnknownWordError

from oracles import naive_neighbors


def write_emb(tmp_path, text, name="emb.txt"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestLoadEmbeddings:
    def test_minimal_file(self, tmp_path):
        path = write_emb(tmp_path, "2 3\na 1 0 0\nb 0 1 0\n")
        emb = rm.load_embeddings(path)
        assert len(emb) == 2
        assert emb.dim == 3
        assert list(emb.vector("a")) == [1.0, 0.0, 0.0]

    def test_arity_mismatch(self, tmp_path):
        path = write_emb(tmp_path, "2 3\na 1 0 0\nb 0 1\n")
        with pytest.raises(EmbeddingFormatError, match=":3"):
            rm.load_embeddings(path)

    def test_duplicate_word(self, tmp_path):
        path = write_emb(tmp_path, "2 2\na 1 0\na 0 1\n")
        with pytest.raises(EmbeddingFormatError, match="duplicate"):
            rm.load_embeddings(path)

    def test_zero_norm_row(self, tmp_path):
        path = write_emb(tmp_path, "1 2\na 0 0\n")
        with pytest.raises(EmbeddingFormatError, match="zero-norm"):
            rm.load_embeddings(path)

    def test_malformed_header(self, tmp_path):
        for header in ("", "3", "a b", "2 3 4"):
            path = write_emb(tmp_path, header + "\n", name=f"h{len(header)}.txt")
            with pytest.raises(EmbeddingFormatError, match=":1"):
                rm.load_embeddings(path)

    def test_non_numeric_component(self, tmp_path):
        path = write_emb(tmp_path, "1 2\na 1 x\n")
        with pytest.raises(EmbeddingFormatError, match=":2"):
            rm.load_embeddings(path)

    def test_bundled_fixture(self, toy_embeddings):
        assert len(toy_embeddings) == 12
        assert toy_embeddings.dim == 5
        assert "kitten" in toy_embeddings
        assert list(toy_embeddings.vector("man")) == [0.2, 0.0, 0.0, 0.0, 1.0]


class TestCosine:
    def test_identity_is_exactly_one(self, toy_embeddings):
        for word in toy_embeddings.words:
            assert rm.cos_a(toy_embeddings, word, word) == 1.0

    def test_orthogonal(self, tmp_path):
        path = write_emb(tmp_path, "2 2\na 1 0\nb 0 1\n")
        emb = rm.load_embeddings(path)
        assert rm.cos_a(emb, "a", "b") == 0.0

    def test_45_degrees(self, tmp_path):
        path = write_emb(tmp_path, "2 2\na 1 1\nb 1 0\n")
        emb = rm.load_embeddings(path)
        assert rm.cos_a(emb, "a", "b") == pytest.approx(math.sqrt(2) / 2, abs=1e-12)

    def test_oov_lookup(self, toy_embeddings):
        with pytest.raises(UnknownWordError, match="dragon"):
            rm.cos_a(toy_embeddings, "dragon", "cat")

    def test_symmetry(self, toy_embeddings):
        words = toy_embeddings.words
        for w1 in words:
            for w2 in words:
                assert abs(
                    rm.cos_a(toy_embeddings, w1, w2) - rm.cos_a(toy_embeddings, w2, w1)
                ) <= 1e-12

    def test_range(self, toy_embeddings):
        for w1 in toy_embeddings.words:
            for w2 in toy_embeddings.words:
                assert -1.0 - 1e-12 <= rm.cos_a(toy_embeddings, w1, w2) <= 1.0 + 1e-12


class TestNeighbors:
    def test_self_always_included(self, toy_embeddings):
        vocab = rm.Vocabulary.from_counts({"cup": 5})
        nset = rm.neighbors(toy_embeddings, "cup", vocab, threshold=0.5)
        assert nset.items == (("cup", 1.0),)

    def test_strict_threshold(self, tmp_path):
        # b sits at cosine exactly 0.5 from a
        path = write_emb(tmp_path, "2 2\na 1 0\nb 1 1.7320508075688772\n")
        emb = rm.load_embeddings(path)
        assert rm.cos_a(emb, "a", "b") == pytest.approx(0.5, abs=1e-12)
        vocab = rm.Vocabulary.from_counts({"a": 1, "b": 1})
        got = rm.neighbors(emb, "a", vocab, threshold=rm.cos_a(emb, "a", "b"))
        assert got.words() == ["a"]

    def test_fixture_matches_exhaustive_scan(self, toy_embeddings, mini_counts):
        vocab = mini_counts[0]
        table = {w: list(toy_embeddings.vector(w)) for w in toy_embeddings.words}
        for target in toy_embeddings.words:
            for threshold in (0.4, 0.5, 0.6):
                got = rm.neighbors(toy_embeddings, target, vocab, threshold)
                want = naive_neighbors(table, target, vocab.words, threshold)
                assert got.words() == [w for w, _ in want]
                for (w1, a1), (w2, a2) in zip(got.items, want):
                    assert w1 == w2
                    assert a1 == pytest.approx(a2, abs=1e-12)

    def test_cap_truncates_strongest(self, toy_embeddings, mini_counts):
        vocab = mini_counts[0]
        full = rm.neighbors(toy_embeddings, "wine", vocab, 0.5)
        capped = rm.neighbors(toy_embeddings, "wine", vocab, 0.5, cap=2)
        assert capped.items == full.items[:2]

    def test_threshold_monotonicity(self, toy_embeddings, mini_counts):
        vocab = mini_counts[0]
        for target in toy_embeddings.words:
            prev = None
            for threshold in (0.3, 0.4, 0.5, 0.6, 0.7, 0.9):
                cur = set(rm.neighbors(toy_embeddings, target, vocab, threshold).words())
                if prev is not None:
                    assert cur <= prev
                prev = cur

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_random_tables_match_oracle(self, data):
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        n = rng.randint(2, 10)
        d = rng.randint(2, 5)
        words = [f"w{i}" for i in range(n)]
        table = {
            w: [round(rng.uniform(-1, 1), 3) or 0.5 for _ in range(d)] for w in words
        }
        emb = rm.DenseEmbeddings(words, np.array([table[w] for w in words]))
        vocab = rm.Vocabulary.from_counts({w: 1 for w in words[: rng.randint(1, n)]})
        target = rng.choice(words)
        threshold = rng.choice([0.3, 0.45, 0.55, 0.7])
        got = rm.neighbors(emb, target, vocab, threshold)
        want = naive_neighbors(table, target, vocab.words, threshold)
        assert got.words() == [w for w, _ in want]
