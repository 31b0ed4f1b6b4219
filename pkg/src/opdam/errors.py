"""Exception types shared across the package."""


class OpdamError(Exception):
    """Base class for all library errors."""


class ParameterError(OpdamError, ValueError):
    """Invalid parameter: bad quadrature exponents, order caps, multiplicity floor."""


class DomainError(OpdamError, ValueError):
    """Argument outside the supported domain."""


class WallError(DomainError):
    """Point too close to a Weyl chamber wall for the requested operation."""


class ConvergenceError(OpdamError, ArithmeticError):
    """Series or quadrature did not reach the requested tolerance."""


class SingularSpectralParam(DomainError):
    """Spectral parameter on the singular set tau(lambda) = k^2 of the main theorem."""


class DegenerateSpectrum(OpdamError):
    """Two weights share both Cherednik eigenvalues at this multiplicity (resonant k)."""


class ResonantParam(DomainError):
    """Spectral parameter violates the separation conditions of the degree-5 operator route."""
