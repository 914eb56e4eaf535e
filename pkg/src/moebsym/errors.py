"""Exception hierarchy shared by all modules."""


class MoebsymError(ValueError):
    """Base class; ``code`` is the machine-readable tag used by the CLI."""

    code = "error"


class DomainError(MoebsymError):
    """An input lies outside the region where an operation is defined."""

    code = "domain"


class DegeneracyError(MoebsymError):
    """Inputs coincide or are otherwise degenerate for the construction."""

    code = "degenerate"
