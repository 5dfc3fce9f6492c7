class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""
