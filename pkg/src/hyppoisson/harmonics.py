"""Peter-Weyl K-types (p, q) and the zonal spherical harmonics phi_{p,q} of the sphere S^{4n-1}.

A boundary point is written ``w_1 = cos(xi) (cos(phi) + y sin(phi))``,
``w_j = eta_j sin(xi)`` with ``y`` a pure unit quaternion and ``eta`` a unit
vector of H^{n-1}. Zonal harmonics only see ``(xi, phi)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .kernels import Quaternion
from .special import binomial, gegenbauer_c1, jacobi_poly


@dataclass(frozen=True, order=True)
class KTypeIndex:
    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if int(p) != p or int(q) != q or p < 0 or q < 0:
            raise DomainError(f"({p}, {q}): p and q must be nonnegative integers")
        if (q - p) < 0 or (q - p) % 2:
            raise DomainError(f"({p}, {q}): q - p must be a nonnegative even integer")

    @property
    def half_gap(self) -> int:
        """(q - p) / 2, the degree of the radial polynomial."""
        return (self.q - self.p) // 2


def ktype_enumerate(max_degree: int) -> list[KTypeIndex]:
    """All K-types with q <= max_degree, sorted lexicographically."""
    if max_degree < 0:
        raise DomainError("max_degree must be >= 0")
    return [KTypeIndex(p, q) for p in range(max_degree + 1)
            for q in range(p, max_degree + 1, 2)]


@dataclass(frozen=True)
class BoundaryPoint:
    xi: float
    phi: float
    y: Quaternion = Quaternion(0.0, 1.0, 0.0, 0.0)
    eta: np.ndarray = field(default=None, compare=False)

    def __post_init__(self):
        if not (-1e-15 <= self.xi <= math.pi / 2 + 1e-15 and -1e-15 <= self.phi <= math.pi + 1e-15):
            raise DomainError("xi must lie in [0, pi/2] and phi in [0, pi]")
        if abs(self.y.real) > 1e-12 or abs(abs(self.y) - 1.0) > 1e-12:
            raise DomainError("y must be a pure unit quaternion")

    def to_hvector(self, n: int) -> np.ndarray:
        eta = self.eta
        if eta is None:
            eta = np.zeros((n - 1, 4))
            if n > 1:
                eta[0, 0] = 1.0
        eta = np.asarray(eta, dtype=float)
        if eta.shape != (n - 1, 4) or abs(np.sum(eta ** 2) - 1.0) > 1e-12:
            raise DomainError(f"eta must be a unit vector of H^{n - 1}")
        w = np.empty((n, 4))
        w[0] = math.cos(self.xi) * (math.cos(self.phi) * np.array([1.0, 0, 0, 0])
                                    + math.sin(self.phi) * self.y.to_array())
        w[1:] = eta * math.sin(self.xi)
        return w


def _radial_coefficients(kt: KTypeIndex, n: int) -> list[float]:
    """Coefficients of the terminating 2F1((p-q)/2, -(p+q+2)/2; 2n-2; x)."""
    a = (kt.p - kt.q) / 2
    b = -(kt.p + kt.q + 2) / 2
    c = 2 * n - 2
    coefs = [1.0]
    for k in range(kt.half_gap):
        coefs.append(coefs[-1] * (a + k) * (b + k) / ((c + k) * (k + 1)))
    return coefs


def radial_profile(kt: KTypeIndex, n: int, cos_xi, sin_xi):
    """cos^q(xi) 2F1((p-q)/2, -(p+q+2)/2; 2n-2; -tan^2 xi).

    Expanded termwise as sum_k c_k (-1)^k cos^(q-2k) sin^(2k); q - 2k >= p >= 0,
    so there is nothing singular at xi = pi/2.
    """
    cos_xi = np.asarray(cos_xi, dtype=float)
    sin_xi = np.asarray(sin_xi, dtype=float)
    out = np.zeros(np.broadcast(cos_xi, sin_xi).shape)
    for k, ck in enumerate(_radial_coefficients(kt, n)):
        out = out + ck * (-1) ** k * cos_xi ** (kt.q - 2 * k) * sin_xi ** (2 * k)
    return out


def radial_profile_jacobi(kt: KTypeIndex, n: int, cos_xi):
    """Same profile through the Jacobi form cos^p(xi) P_N^(2n-3, p+1)(cos 2xi) / C(N+2n-3, N)."""
    cos_xi = np.asarray(cos_xi, dtype=float)
    N = kt.half_gap
    jac = jacobi_poly(N, 2 * n - 3, kt.p + 1, 2.0 * cos_xi ** 2 - 1.0)
    return cos_xi ** kt.p * jac / binomial(N + 2 * n - 3, N)


def zonal_profile(kt: KTypeIndex, n: int, xi, phi):
    """phi_{p,q} on arrays of (xi, phi); the angular factor is U_p(cos phi)/(p+1)."""
    if n < 2:
        raise DomainError("n must be >= 2")
    xi = np.asarray(xi, dtype=float)
    phi = np.asarray(phi, dtype=float)
    angular = gegenbauer_c1(kt.p, np.cos(phi)) / (kt.p + 1)
    return angular * radial_profile(kt, n, np.cos(xi), np.sin(xi))


def zonal_on_ball(kt: KTypeIndex, n: int, rho, theta):
    """phi_{p,q} as a function of w_1 = rho (cos theta + y sin theta), i.e. cos xi = rho."""
    rho = np.asarray(rho, dtype=float)
    theta = np.asarray(theta, dtype=float)
    sin_xi = np.sqrt(np.clip(1.0 - rho * rho, 0.0, None))
    angular = gegenbauer_c1(kt.p, np.cos(theta)) / (kt.p + 1)
    return angular * radial_profile(kt, n, rho, sin_xi)


def zonal_harmonic(kt: KTypeIndex, n: int, pt: BoundaryPoint) -> float:
    """phi_{p,q}(pt); depends on (xi, phi) only."""
    return float(zonal_profile(kt, n, pt.xi, pt.phi))
