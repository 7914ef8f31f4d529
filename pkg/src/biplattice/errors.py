"""Exception hierarchy shared by all modules."""


class BipError(Exception):
    """Base class for all errors raised by this package."""


class NotBipartitional(BipError):
    """The relation or its complement is not transitive."""


class MalformedPartition(BipError):
    """Blocks do not form an ordered partition of {1, .., n}."""


class SizeMismatch(BipError):
    """Operands live on ground sets of different sizes."""


class SizeLimitExceeded(BipError):
    """The requested ground-set size is above the configured guard."""


class NotCompatible(BipError):
    """The bipartition is not compatible with the given ordered partition."""


class InvalidCode(BipError):
    """The integer vector is not a valid code."""


class NotMaximalChain(BipError):
    """The element sequence is not a bottom-to-top saturated chain."""


class NotAnInterval(BipError):
    """The two endpoints are not comparable (lower <= upper fails)."""


class NotRegular(BipError):
    """The interval is irregular, so the product factorization does not apply."""


class NotIrregular(BipError):
    """The interval is regular, so no irregularity witness exists."""


class NoCompatiblePermutation(BipError):
    """No permutation is compatible with both interval endpoints."""


class UnionNotFull(BipError):
    """The skipped intervals do not cover the full interior rank set."""


class UnknownSuite(BipError):
    """No verification suite with the requested name exists."""
