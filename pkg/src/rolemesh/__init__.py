"""Sparse word-by-role vectors with affordance meshing.

Pipeline: ingest PAS-annotated sentences into a word-by-role count
matrix, weight it with (argument-specific) PPMI, refine it by
association-weighted interpolation with half-down rounding and
elementwise squaring, then query it (meshing, introspection, nearest
neighbors) or benchmark it on word-similarity data.
"""

from .association import DenseEmbeddings, NeighborSet, cos_a, load_embeddings, neighbors
from .core import (
    MeshRelation,
    ModelMeta,
    PasFrame,
    RoleContext,
    RoleIndex,
    SentenceRecord,
    SparseRoleMatrix,
    Vocabulary,
    load_model,
    parse_role,
    render_role,
    save_model,
)
from .evaluation import (
    BenchmarkPair,
    EvalReport,
    evaluate,
    load_benchmark,
    spearman,
    svd_reduce,
)
from .inference import QueryModel
from .ingest import IngestConfig, IngestStats, build_counts, extract_contexts, load_whitelist
from .refine import RefineConfig, interpolate_row, refine, round_half_down, synthesize_oov
from .weighting import PpmiConfig, ppmi

__version__ = "0.1.0"

__all__ = [
    "BenchmarkPair",
    "DenseEmbeddings",
    "EvalReport",
    "IngestConfig",
    "IngestStats",
    "MeshRelation",
    "ModelMeta",
    "NeighborSet",
    "PasFrame",
    "PpmiConfig",
    "QueryModel",
    "RefineConfig",
    "RoleContext",
    "RoleIndex",
    "SentenceRecord",
    "SparseRoleMatrix",
    "Vocabulary",
    "build_counts",
    "cos_a",
    "evaluate",
    "extract_contexts",
    "interpolate_row",
    "load_benchmark",
    "load_embeddings",
    "load_model",
    "load_whitelist",
    "neighbors",
    "parse_role",
    "ppmi",
    "refine",
    "render_role",
    "round_half_down",
    "save_model",
    "spearman",
    "svd_reduce",
    "synthesize_oov",
]
