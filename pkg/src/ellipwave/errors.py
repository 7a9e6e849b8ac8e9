"""Exception hierarchy shared across the package."""


class ParameterError(ValueError):
    """Physical parameters violate a precondition of a reduction."""


class ConstructionError(ValueError):
    """No real elliptic solution can be assembled for these parameters."""


class ComplexRootsError(ConstructionError):
    """The quartic has non-real roots where real ones are required."""


class EllipticDomainError(ValueError):
    """Parameter or argument outside an elliptic routine's domain."""


class PoleError(ArithmeticError):
    """The rational envelope hits a zero denominator."""

    def __init__(self, message: str, location: float):
        super().__init__(message)
        self.location = location
