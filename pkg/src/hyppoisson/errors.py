"""Exception hierarchy shared by every module."""


class HypPoissonError(Exception):
    """Base class for all library errors."""


class PoleError(HypPoissonError, ValueError):
    """Gamma function evaluated at (or within 1e-12 of) a nonpositive integer."""


class ParameterPole(HypPoissonError, ValueError):
    """Hypergeometric lower parameter c is a nonpositive integer."""


class NoConvergence(HypPoissonError, ArithmeticError):
    """A series, quadrature refinement or extrapolation failed to reach its tolerance."""


class DomainError(HypPoissonError, ValueError):
    """Argument outside the domain where an operation is defined."""


class ZeroQuaternion(DomainError):
    pass


class NotNormalized(HypPoissonError, RuntimeError):
    """Zonal integral requested on a grid whose measure constant was never fitted."""


class ConfigError(HypPoissonError, ValueError):
    """Invalid command-line configuration."""
