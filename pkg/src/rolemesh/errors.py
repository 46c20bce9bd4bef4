"""Exception hierarchy shared across the package."""


class RolemeshError(Exception):
    """Base class for all package errors."""


class RoleFormatError(RolemeshError, ValueError):
    """A role string or argument label does not match the expected format."""


class CorpusFormatError(RolemeshError, ValueError):
    """A corpus line cannot be parsed into a sentence record."""


class EmptyModelError(RolemeshError, RuntimeError):
    """No pairs survived ingestion and frequency trimming."""


class StageMismatchError(RolemeshError, ValueError):
    """A matrix was passed to an operation expecting a different stage."""


class ModelFormatError(RolemeshError, ValueError):
    """A persisted model directory is missing files or malformed."""


class EmbeddingFormatError(RolemeshError, ValueError):
    """An embedding file is malformed (reported with a line number)."""


class UnknownWordError(RolemeshError, LookupError):
    """A queried word has no representation in the required space."""


class UnknownRoleError(RolemeshError, LookupError):
    """A queried role context is not part of the model."""


class UninterpolatableWordError(UnknownWordError):
    """A word has no neighbors above the similarity threshold."""


class BenchmarkFormatError(RolemeshError, ValueError):
    """A benchmark file line cannot be parsed."""


class CorrelationUndefinedError(RolemeshError, ValueError):
    """Spearman correlation is undefined for the given inputs."""
