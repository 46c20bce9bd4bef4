#!/usr/bin/env python3
"""Generate the bundled data fixtures (run once; outputs are committed).

Writes data/mini_corpus.jsonl, data/verbs.txt, data/toy_embeddings.txt,
and data/benchmark.tsv. The corpus is template-generated with a fixed
seed so the files are reproducible, then frozen in git; tests treat the
files, not this script, as the source of truth.
"""

import json
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data")

VERBS = [
    "drink", "eat", "chase", "hold", "read", "sell", "buy", "pour",
    "throw", "catch", "cover", "carry", "fill", "like", "see", "watch",
    "open", "close", "wash", "find",
]

# 12 words, 5 dims. Values are tuned so that every pairwise cosine keeps
# a margin > 0.02 from each swept threshold {0.4, 0.5, 0.6}:
#   - wine~tea sits near 0.55 (picked up at 0.5, dropped at 0.6)
#   - cup~dog sits near 0.42 (picked up at 0.4 only)
#   - kitten/puppy are absent from the corpus but close to cat/dog
EMBEDDINGS = [
    ("cat",    (1.00, 0.40, 0.00, 0.00, 0.05)),
    ("dog",    (0.40, 1.00, 0.00, 0.00, 0.08)),
    ("kitten", (0.90, 0.55, 0.00, 0.00, 0.02)),
    ("puppy",  (0.50, 0.95, 0.00, 0.00, 0.04)),
    ("wine",   (0.00, 0.00, 1.00, 0.35, 0.06)),
    ("tea",    (0.00, 0.00, 0.25, 1.00, 0.03)),
    ("coffee", (0.00, 0.00, 0.65, 0.90, 0.05)),
    ("water",  (0.00, 0.00, 0.90, 0.65, 0.07)),
    ("cup",    (-0.30, 0.50, -0.30, 0.30, -0.30)),
    ("man",    (0.20, 0.00, 0.00, 0.00, 1.00)),
    ("woman",  (0.00, 0.20, 0.00, 0.00, 1.00)),
    ("john",   (0.10, 0.10, 0.00, 0.00, 0.95)),
]

BENCHMARK = [
    ("cat", "dog", 7.5),
    ("wine", "tea", 6.2),
    ("coffee", "tea", 7.1),
    ("wine", "water", 4.8),
    ("man", "woman", 8.2),
    ("cup", "bottle", 6.0),
    ("book", "newspaper", 5.9),
    ("kitten", "cat", 8.3),
    ("puppy", "dog", 8.1),
    ("dragon", "cat", 2.0),
    ("man", "john", 6.6),
    ("fish", "meat", 4.4),
    ("park", "school", 3.3),
    ("tea", "water", 5.1),
]

HUMANS = ["john", "mary", "man", "woman", "boy", "girl", "teacher", "doctor"]
ANIMALS = ["dog", "cat"]
BEVERAGES = ["wine", "tea", "coffee", "water", "milk"]
FOODS = ["bread", "meat", "fish", "apple", "cake"]
CHASEABLE = ["cat", "mouse", "bird", "ball", "dog"]
HOLDABLE = ["cup", "bottle", "book", "ball", "glass"]
READABLE = ["book", "newspaper", "letter"]
TRADEABLE = ["wine", "tea", "book", "fish", "bread", "newspaper"]
COVERABLE = ["face", "table", "book"]
CONTAINERS = ["cup", "bottle", "glass"]
MANNERS = ["slowly", "quickly", "carefully", "quietly", "eagerly"]
PLACES = ["park", "kitchen", "shop", "garden", "school"]
TIMES = ["yesterday", "today"]

# adjective decorations: (noun, adjective, probability)
ADJECTIVES = {
    "wine": ("red", 0.5),
    "tea": ("hot", 0.4),
    "coffee": ("hot", 0.4),
    "man": ("old", 0.3),
    "woman": ("old", 0.3),
    "dog": ("black", 0.3),
}

THIRD_PERSON = {
    "catch": "catches", "wash": "washes", "watch": "watches",
    "carry": "carries",
}

# verb -> (subject pool, object pool, manner prob, place prob, time prob)
TEMPLATES = {
    "drink": (HUMANS + ANIMALS, BEVERAGES, 0.45, 0.2, 0.1),
    "eat": (HUMANS + ANIMALS, FOODS, 0.4, 0.2, 0.1),
    "chase": (["dog", "cat", "boy", "girl"], CHASEABLE, 0.35, 0.3, 0.1),
    "hold": (HUMANS, HOLDABLE, 0.3, 0.15, 0.05),
    "read": (HUMANS, READABLE, 0.4, 0.25, 0.15),
    "sell": (["man", "woman", "teacher", "doctor"], TRADEABLE, 0.1, 0.35, 0.1),
    "buy": (HUMANS, TRADEABLE, 0.1, 0.35, 0.15),
    "pour": (HUMANS, BEVERAGES, 0.4, 0.15, 0.05),
    "throw": (["boy", "girl", "john", "mary"], ["ball", "apple"], 0.4, 0.3, 0.1),
    "catch": (["dog", "cat", "boy", "girl"], ["ball", "mouse", "fish", "bird"], 0.35, 0.25, 0.1),
    "cover": (["newspaper", "woman", "man", "john"], COVERABLE, 0.25, 0.1, 0.05),
    "carry": (HUMANS, HOLDABLE, 0.3, 0.25, 0.05),
    "fill": (HUMANS, CONTAINERS, 0.25, 0.15, 0.05),
    "like": (HUMANS, BEVERAGES + FOODS + READABLE, 0.0, 0.0, 0.05),
    "see": (HUMANS, ANIMALS + ["bird", "mouse"], 0.1, 0.35, 0.2),
    "watch": (HUMANS, ["bird", "dog", "cat"], 0.2, 0.3, 0.15),
    "open": (HUMANS, ["book", "bottle"], 0.3, 0.1, 0.05),
    "close": (HUMANS, ["book", "bottle"], 0.3, 0.1, 0.05),
    "wash": (HUMANS, ["cup", "glass", "apple", "face"], 0.3, 0.2, 0.05),
    "find": (HUMANS, ["ball", "letter", "cup", "mouse"], 0.1, 0.35, 0.15),
}

SENTENCES_PER_VERB = 10


def decorate(rng, noun):
    adj = ADJECTIVES.get(noun)
    if adj and rng.random() < adj[1]:
        return [adj[0], noun]
    return [noun]


def third_person(verb):
    return THIRD_PERSON.get(verb, verb + "s")


def make_sentence(rng, verb):
    subjects, objects, p_mnr, p_loc, p_tmp = TEMPLATES[verb]
    subj = decorate(rng, rng.choice(subjects))
    obj = decorate(rng, rng.choice(objects))
    args = [("ARG0", subj), ("ARG1", obj)]
    tokens = [subj[0].capitalize()] + subj[1:]
    tokens.append(third_person(verb))
    tokens += obj
    if verb in ("sell", "buy", "fill") and rng.random() < 0.3:
        prep = {"sell": "to", "buy": "from", "fill": "with"}[verb]
        extra = rng.choice(BEVERAGES) if verb == "fill" else rng.choice(HUMANS)
        args.append(("ARG2", [extra]))
        tokens += [prep, extra]
    if rng.random() < p_mnr:
        manner = rng.choice(MANNERS)
        args.append(("ARGM-MNR", [manner]))
        tokens.append(manner)
    if rng.random() < p_loc:
        place = rng.choice(PLACES)
        args.append(("ARGM-LOC", [place]))
        tokens += ["in", "the", place]
    if rng.random() < p_tmp:
        when = rng.choice(TIMES)
        args.append(("ARGM-TMP", [when]))
        tokens.append(when)
    tokens.append(".")
    frame = {
        "predicate_lemma": verb,
        "predicate_index": len(subj),
        "args": [{"label": lab, "head_tokens": toks} for lab, toks in args],
    }
    return {"tokens": tokens, "frames": [frame]}


def special_records():
    """Hand-written records that exercise the ingestion edge cases."""
    return [
        # the canonical multi-token-argument sentence
        {
            "tokens": ["John", "drinks", "red", "wine", "slowly"],
            "frames": [
                {
                    "predicate_lemma": "drink",
                    "predicate_index": 1,
                    "args": [
                        {"label": "ARG0", "head_tokens": ["john"]},
                        {"label": "ARG1", "head_tokens": ["red", "wine"]},
                        {"label": "ARGM-MNR", "head_tokens": ["slowly"]},
                    ],
                }
            ],
        },
        # two frames in one sentence
        {
            "tokens": ["Mary", "drinks", "tea", "and", "reads", "the", "book"],
            "frames": [
                {
                    "predicate_lemma": "drink",
                    "predicate_index": 1,
                    "args": [
                        {"label": "ARG0", "head_tokens": ["mary"]},
                        {"label": "ARG1", "head_tokens": ["tea"]},
                    ],
                },
                {
                    "predicate_lemma": "read",
                    "predicate_index": 4,
                    "args": [
                        {"label": "ARG0", "head_tokens": ["mary"]},
                        {"label": "ARG1", "head_tokens": ["book"]},
                    ],
                },
            ],
        },
        # non-whitelisted predicate: contributes nothing
        {
            "tokens": ["The", "boy", "whistles", "quietly"],
            "frames": [
                {
                    "predicate_lemma": "whistle",
                    "predicate_index": 2,
                    "args": [
                        {"label": "ARG0", "head_tokens": ["boy"]},
                        {"label": "ARGM-MNR", "head_tokens": ["quietly"]},
                    ],
                }
            ],
        },
        # reference label rejected at ingest, rest of frame kept
        {
            "tokens": ["The", "dog", "that", "chases", "the", "ball", "runs"],
            "frames": [
                {
                    "predicate_lemma": "chase",
                    "predicate_index": 3,
                    "args": [
                        {"label": "R-ARG0", "head_tokens": ["that"]},
                        {"label": "ARG0", "head_tokens": ["dog"]},
                        {"label": "ARG1", "head_tokens": ["ball"]},
                    ],
                }
            ],
        },
        # unknown adjunct function rejected with a warning
        {
            "tokens": ["John", "sees", "the", "cat", "somehow"],
            "frames": [
                {
                    "predicate_lemma": "see",
                    "predicate_index": 1,
                    "args": [
                        {"label": "ARG0", "head_tokens": ["john"]},
                        {"label": "ARG1", "head_tokens": ["cat"]},
                        {"label": "ARGM-XYZ", "head_tokens": ["somehow"]},
                    ],
                }
            ],
        },
        # sentence with no frames at all
        {"tokens": ["Nothing", "happened", "."], "frames": []},
        # keep every evaluated beverage above the trim threshold
        {
            "tokens": ["Man", "drinks", "water", "quickly"],
            "frames": [
                {
                    "predicate_lemma": "drink",
                    "predicate_index": 1,
                    "args": [
                        {"label": "ARG0", "head_tokens": ["man"]},
                        {"label": "ARG1", "head_tokens": ["water"]},
                        {"label": "ARGM-MNR", "head_tokens": ["quickly"]},
                    ],
                }
            ],
        },
        {
            "tokens": ["Mary", "pours", "water", "in", "the", "kitchen"],
            "frames": [
                {
                    "predicate_lemma": "pour",
                    "predicate_index": 1,
                    "args": [
                        {"label": "ARG0", "head_tokens": ["mary"]},
                        {"label": "ARG1", "head_tokens": ["water"]},
                        {"label": "ARGM-LOC", "head_tokens": ["kitchen"]},
                    ],
                }
            ],
        },
    ]


def main():
    os.makedirs(DATA, exist_ok=True)
    rng = random.Random(20180607)

    records = special_records()
    for verb in VERBS:
        for _ in range(SENTENCES_PER_VERB):
            records.append(make_sentence(rng, verb))
    rng.shuffle(records)

    with open(os.path.join(DATA, "mini_corpus.jsonl"), "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec))
            fh.write("\n")

    with open(os.path.join(DATA, "verbs.txt"), "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# verb whitelist for the bundled mini corpus\n")
        for verb in VERBS:
            fh.write(verb + "\n")

    with open(os.path.join(DATA, "toy_embeddings.txt"), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{len(EMBEDDINGS)} 5\n")
        for word, vec in EMBEDDINGS:
            fh.write(word + " " + " ".join(f"{x:.2f}" for x in vec) + "\n")

    with open(os.path.join(DATA, "benchmark.tsv"), "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# toy word-similarity gold data\n")
        for w1, w2, score in BENCHMARK:
            fh.write(f"{w1}\t{w2}\t{score}\n")

    verify()
    print(f"wrote {len(records)} corpus records")


def verify():
    """The committed fixtures must satisfy the coverage the tests rely on."""
    import rolemesh as rmx

    wl = rmx.load_whitelist(os.path.join(DATA, "verbs.txt"))
    vocab, _, _, _ = rmx.build_counts(
        os.path.join(DATA, "mini_corpus.jsonl"),
        rmx.IngestConfig(whitelist=wl, min_count=2),
    )
    in_vocab = [w for w, _ in EMBEDDINGS if w not in ("kitten", "puppy")]
    missing = [w for w in in_vocab if w not in vocab]
    assert not missing, f"embedding words trimmed from the corpus: {missing}"
    assert "kitten" not in vocab and "puppy" not in vocab


if __name__ == "__main__":
    main()
