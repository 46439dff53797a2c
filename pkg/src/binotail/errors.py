class DomainError(ValueError):
    """Parameters fall outside the hypothesis of the requested operation."""


class NullEventError(DomainError):
    """Conditioning on an event of probability zero."""


class PrecisionExhausted(ArithmeticError):
    """An enclosure could not be made narrow enough before the precision cap."""
