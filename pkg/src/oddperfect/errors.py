"""Exception types shared across the package."""


class FactorBoundError(RuntimeError):
    """A cofactor survived trial division, is not probable-prime, and exceeds
    the configured factoring bound.  Raised instead of returning a wrong
    factorization."""


class ConsistencyError(RuntimeError):
    """An internal cross-check that must always hold has failed.

    This is the loud-abort path: it fires only if a verified identity
    (solution splitting, valuation bookkeeping) is violated by actual data.
    """


class CheckpointError(RuntimeError):
    """A checkpoint file is unreadable, corrupt, or belongs to a different
    search configuration.  The file on disk is never modified."""


class SearchInterrupted(RuntimeError):
    """A search stopped early (shard quota reached).  Completed shards are
    preserved in the checkpoint file when one is configured."""
