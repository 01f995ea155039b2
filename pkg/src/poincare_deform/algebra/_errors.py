class ExponentOverflow(OverflowError):
    """A generator or lambda exponent left the packed field range."""


class CoefficientOverflow(ArithmeticError):
    """Raised by the compiled kernel when a coefficient leaves int64 range."""
