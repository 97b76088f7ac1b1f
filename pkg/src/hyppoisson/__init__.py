"""Generalized Poisson transforms and spherical functions on quaternionic hyperbolic space."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConfigError,
    DomainError,
    HypPoissonError,
    NoConvergence,
    NotNormalized,
    ParameterPole,
    PoleError,
    ZeroQuaternion,
)
from .harmonics import BoundaryPoint, KTypeIndex  # noqa: E402
from .kernels import Quaternion, SpectralParams, poisson_kernel  # noqa: E402
from .spherical import (  # noqa: E402
    c_constant,
    delta_constant,
    elementary_spherical,
    generalized_spherical,
)
from .transform import KFiniteFunction, poisson_quadrature, poisson_spectral  # noqa: E402

__all__ = [
    "BoundaryPoint", "ConfigError", "DomainError", "HypPoissonError", "KFiniteFunction", "KTypeIndex",
    "NoConvergence", "NotNormalized", "ParameterPole", "PoleError", "Quaternion", "SpectralParams",
    "ZeroQuaternion", "c_constant", "delta_constant", "elementary_spherical", "generalized_spherical",
    "poisson_kernel", "poisson_quadrature", "poisson_spectral",
]
