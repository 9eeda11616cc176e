"""Exception types."""


class SizeError(ValueError):
    """A matrix would exceed the supported dimension."""


class NumericalError(ArithmeticError):
    """A numerical routine failed or produced values outside their valid range."""


class LeakageError(ValueError):
    """A state has weight outside the codeword space where none is allowed."""
