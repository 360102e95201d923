"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a function."""


class DegenerateModelError(ValueError):
    """The requested quantity does not exist for a degenerate model (theta = 0)."""


class DiagnosticError(RuntimeError):
    """A numerical check could not produce a trustworthy result."""
