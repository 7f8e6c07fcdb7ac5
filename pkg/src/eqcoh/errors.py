"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the supported mathematical domain."""


class SectorError(DomainError):
    """Degree lies outside the grading sector a routine can evaluate."""


class ParseError(ValueError):
    """Malformed degree expression; ``position`` is a 0-based column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position
