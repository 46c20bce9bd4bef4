"""Command-line entry point: build, refine, query, eval.

Model directories are staged (counts -> ppmi -> refined); each command
checks the stage of its input and writes its output atomically, so a
failed run never leaves a partial directory. Exit codes: 0 success,
1 generic error, 2 lookup or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import association, evaluation, inference, ingest, weighting
from .refine import DEFAULT_THRESHOLD, RefineConfig
from .refine import refine as refine_matrix
from .core import (
    ModelMeta,
    format_value,
    load_model,
    parse_role,
    save_model,
)
from .errors import RolemeshError

WORKERS_ENV = "ROLEMESH_WORKERS"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_LOOKUP = 2


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rolemesh",
        description="Sparse word-by-role vectors with affordance meshing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="ingest a PAS JSONL corpus into a model")
    p.add_argument("corpus", help="PAS JSONL file")
    p.add_argument("--out", required=True, help="output model directory")
    p.add_argument("--whitelist", help="verb whitelist file (one lemma per line)")
    p.add_argument("--min-count", type=int, default=ingest.DEFAULT_MIN_COUNT)
    p.add_argument("--ppmi-mode", choices=["plain", "arg"], default="arg")
    p.add_argument("--log-base", choices=["e", "2", "10"], default="e")
    p.add_argument(
        "--stage",
        choices=["counts", "ppmi"],
        default="ppmi",
        help="stop after raw counting or after weighting (default)",
    )
    p.add_argument("--force", action="store_true", help="overwrite existing output")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("refine", help="interpolate, round, and square a ppmi model")
    p.add_argument("model_dir")
    p.add_argument("--embeddings", required=True, help="word2vec-text embedding file")
    p.add_argument("--out", required=True)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--no-rounding", action="store_true")
    p.add_argument("--no-square", action="store_true")
    p.add_argument(
        "--exclude-self",
        action="store_true",
        help="leave the word's own row out of its interpolation average",
    )
    p.add_argument("--neighbor-cap", type=int, default=None)
    p.add_argument("--force", action="store_true")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("query", help="introspect a refined model")
    p.add_argument("model_dir")
    p.add_argument(
        "kind", choices=["mesh", "top-roles", "top-words", "contrast", "similar"]
    )
    p.add_argument("args", nargs="*", help="words (or one role for top-words)")
    p.add_argument("--arg1", help="argument label of the first word (mesh)")
    p.add_argument("--arg2", help="argument label of the second word (mesh)")
    p.add_argument("-k", type=int, default=10)
    p.add_argument("--embeddings", help="enable OOV synthesis from this table")
    p.add_argument("--json", action="store_true", dest="as_json")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("eval", help="run a word-similarity benchmark")
    p.add_argument("model_dir")
    p.add_argument("benchmark", help="TSV word1<TAB>word2<TAB>score")
    p.add_argument("--mode", choices=list(evaluation.MODES), default="sparse")
    p.add_argument("--embeddings")
    p.add_argument("--svd-rank", type=int, default=None)
    p.add_argument(
        "--synthesize-oov",
        action="store_true",
        help="synthesize rows for benchmark words outside the vocabulary",
    )
    p.add_argument("--json", action="store_true", dest="as_json")
    p.add_argument(
        "--report-dir",
        help="write report.json, pairs.tsv, and figures to this directory",
    )
    p.set_defaults(func=cmd_eval)
    return parser


def _workers(args) -> int:
    return args.workers if args.workers is not None else _default_workers()


def cmd_build(args) -> int:
    whitelist = ingest.load_whitelist(args.whitelist) if args.whitelist else None
    cfg = ingest.IngestConfig(whitelist=whitelist, min_count=args.min_count)
    vocab, roles, counts, stats = ingest.build_counts(
        args.corpus, cfg, workers=_workers(args)
    )
    meta = ModelMeta(stage="counts", min_count=args.min_count)
    matrix = counts
    if args.stage == "ppmi":
        pcfg = weighting.PpmiConfig(mode=args.ppmi_mode, log_base=args.log_base)
        matrix = weighting.ppmi(counts, vocab, roles, pcfg)
        meta = ModelMeta(
            stage="ppmi",
            min_count=args.min_count,
            log_base=args.log_base,
            ppmi_mode=pcfg.canonical_mode,
        )
    save_model(args.out, vocab, roles, matrix, meta, force=args.force)
    frames_dropped = stats.frames_skipped_whitelist + stats.frames_skipped_invalid
    print(f"sentences        {stats.sentences}")
    print(f"frames kept      {stats.frames_kept}")
    print(f"frames dropped   {frames_dropped}")
    print(f"args dropped     {stats.args_skipped_label + stats.args_skipped_empty}")
    print(f"pairs extracted  {stats.pairs_extracted}")
    print(f"pairs kept       {stats.pairs_kept}")
    print(f"vocabulary       {len(vocab)}")
    print(f"roles            {len(roles)}")
    print(f"stage            {matrix.stage}")
    print(f"sparsity         {matrix.sparsity():.4f}%")
    return EXIT_OK


def cmd_refine(args) -> int:
    vocab, roles, matrix, meta = load_model(args.model_dir)
    emb = association.load_embeddings(args.embeddings)
    cfg = RefineConfig(
        threshold=args.threshold,
        rounding=not args.no_rounding,
        square=not args.no_square,
        include_self=not args.exclude_self,
        neighbor_cap=args.neighbor_cap,
    )
    refined = refine_matrix(matrix, vocab, roles, emb, cfg, workers=_workers(args))
    out_meta = ModelMeta(
        stage="refined",
        min_count=meta.min_count,
        log_base=meta.log_base,
        ppmi_mode=meta.ppmi_mode,
        threshold=cfg.threshold,
        rounding=cfg.rounding,
        squared=cfg.square,
        include_self=cfg.include_self,
    )
    save_model(args.out, vocab, roles, refined, out_meta, force=args.force)
    print(f"entries          {refined.nnz}")
    print(f"sparsity         {refined.sparsity():.4f}%")
    return EXIT_OK


def _query_model(args) -> inference.QueryModel:
    emb = association.load_embeddings(args.embeddings) if args.embeddings else None
    return inference.QueryModel.load(args.model_dir, embeddings=emb)


def _require_args(args, n: int, what: str) -> list[str]:
    if len(args.args) != n:
        raise SystemExit(
            f"rolemesh query {args.kind}: expected {what}, got {len(args.args)} arguments"
        )
    return args.args


def cmd_query(args) -> int:
    model = _query_model(args)
    k = args.k
    if args.kind == "mesh":
        w1, w2 = _require_args(args, 2, "two words")
        if not args.arg1 or not args.arg2:
            raise SystemExit("rolemesh query mesh: --arg1 and --arg2 are required")
        relations = model.mesh(w1, w2, args.arg1, args.arg2)[: max(k, 0)]
        records = [
            {
                "predicate": r.predicate,
                "score": r.score,
                "roles": [r.role_pair[0].render(), r.role_pair[1].render()],
                "features": list(r.feature_values),
            }
            for r in relations
        ]
        lines = [
            f"{r.predicate}\t{format_value(r.score)}"
            f"\t{format_value(r.feature_values[0])}\t{format_value(r.feature_values[1])}"
            for r in relations
        ]
    elif args.kind == "top-roles":
        (word,) = _require_args(args, 1, "one word")
        entries = model.top_roles(word, k)
        records = [{"role": r.render(), "value": v} for r, v in entries]
        lines = [f"{r.render()}\t{format_value(v)}" for r, v in entries]
    elif args.kind == "top-words":
        (role_text,) = _require_args(args, 1, "one role (predicate|LABEL)")
        role = parse_role(role_text)
        entries = model.top_words(role, k)
        records = [{"word": w, "value": v} for w, v in entries]
        lines = [f"{w}\t{format_value(v)}" for w, v in entries]
    elif args.kind == "contrast":
        w1, w2 = _require_args(args, 2, "two words")
        entries = model.contrast(w1, w2, k)
        records = [
            {"role": r.render(), "difference": d, "dominant": w} for r, d, w in entries
        ]
        lines = [f"{r.render()}\t{format_value(d)}\t{w}" for r, d, w in entries]
    else:  # similar
        (word,) = _require_args(args, 1, "one word")
        entries = model.similar_words(word, k)
        records = [{"word": w, "cosine": c} for w, c in entries]
        lines = [f"{w}\t{repr(c)}" for w, c in entries]

    if args.as_json:
        print(json.dumps(records, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return EXIT_OK


def cmd_eval(args) -> int:
    if args.mode == "concat" and not args.embeddings:
        raise SystemExit("rolemesh eval: --mode concat requires --embeddings")
    if args.mode == "svd" and args.svd_rank is None:
        raise SystemExit("rolemesh eval: --mode svd requires --svd-rank")
    if args.synthesize_oov and not args.embeddings:
        raise SystemExit("rolemesh eval: --synthesize-oov requires --embeddings")
    vocab, roles, matrix, meta = load_model(args.model_dir)
    emb = association.load_embeddings(args.embeddings) if args.embeddings else None
    pairs = evaluation.load_benchmark(args.benchmark)
    refine_cfg = RefineConfig(
        threshold=meta.threshold if meta.threshold is not None else DEFAULT_THRESHOLD,
        rounding=meta.rounding if meta.rounding is not None else True,
        square=meta.squared if meta.squared is not None else True,
        include_self=meta.include_self if meta.include_self is not None else True,
    )
    report, results = evaluation.evaluate_pairs(
        matrix,
        vocab,
        roles,
        pairs,
        args.mode,
        embeddings=emb,
        svd_rank=args.svd_rank,
        synthesize=args.synthesize_oov,
        refine_cfg=refine_cfg,
    )
    if args.report_dir:
        from . import report as report_mod

        report_mod.write_report_files(report, results, args.report_dir)
    if args.as_json:
        print(json.dumps(report.to_dict(), sort_keys=True))
    else:
        print(f"mode          {report.mode}")
        print(f"spearman      {report.spearman:.6f}")
        print(f"pairs used    {report.pairs_used}")
        print(f"oov failures  {report.oov_failures}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LookupError as exc:
        print(f"rolemesh: {exc}", file=sys.stderr)
        return EXIT_LOOKUP
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return EXIT_LOOKUP
        raise
    except (RolemeshError, OSError, ValueError) as exc:
        print(f"rolemesh: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
