"""Exception types shared across the package."""


class FbmTopoError(Exception):
    """Base class for everything raised on purpose by this package."""


class DomainError(FbmTopoError):
    """An argument is outside its documented domain."""


class GeneratorError(FbmTopoError):
    """A stochastic generator could not produce a valid sample."""


class DegenerateInputError(FbmTopoError):
    """Input is structurally valid but has no usable information (e.g. constant series)."""


class ContractViolationError(FbmTopoError):
    """An internal contract between stages was broken (e.g. unsorted filtration)."""


class SizeError(FbmTopoError):
    """Input exceeds a hard size guard."""


class UndefinedEntropyError(FbmTopoError):
    """Persistence entropy is undefined (no positive lifespans)."""
