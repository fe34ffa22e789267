"""Exception types shared across the toolkit."""


class KindexError(Exception):
    """Base class for all toolkit errors."""


class DatasetError(KindexError):
    """Input data violates a corpus invariant (duplicate ids, self-citations, ...)."""


class ParseError(DatasetError):
    """A file could not be decoded; the message carries the offending location."""


class NotFoundError(KindexError):
    """A paper or author id was required to exist but does not."""


class ContractViolationError(KindexError):
    """An argument violates a documented precondition."""


class EmptyCohortError(KindexError):
    """An operation that needs at least one author got an empty cohort."""


class StatsError(KindexError):
    """Cohort statistics are undefined for this input (empty cohort or zero mean)."""
