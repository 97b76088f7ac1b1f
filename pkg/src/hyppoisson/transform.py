"""The Poisson transform on K-finite boundary data: spectral and quadrature forms,
Hardy growth norms, the two-sided norm estimate and the r -> 1 inversion.

Boundary L^p norms use the probability measure on the sphere (the reduced
zonal measure divided by its total mass), so constants do not depend on how
the sphere's volume is normalized.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .harmonics import BoundaryPoint, KTypeIndex, zonal_harmonic, zonal_on_ball
from .kernels import SpectralParams, kernel_from_pairing
from .quadrature import ZonalGrid, gauss_legendre, zonal_grid, zonal_integral
from .spherical import (
    c_constant,
    delta_constant,
    generalized_spherical,
    spherical_limit,
)

HARDY_LIMIT_RADII = (0.9, 0.99, 0.999, 0.9999, 0.99999)
SANDWICH_RTOL = 1e-3


@dataclass(frozen=True)
class KFiniteFunction:
    """Finite sum of zonal harmonics, ``sum coeff * phi_{p,q}``."""

    terms: tuple[tuple[KTypeIndex, complex], ...]

    def __post_init__(self):
        terms = tuple((kt, complex(c)) for kt, c in self.terms)
        for kt, _ in terms:
            if not isinstance(kt, KTypeIndex):
                raise DomainError(f"{kt!r} is not a KTypeIndex")
        if len({kt for kt, _ in terms}) != len(terms):
            raise DomainError("K-type indices must be distinct")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_dict(cls, coeffs: dict) -> "KFiniteFunction":
        return cls(tuple(sorted(coeffs.items())))

    @classmethod
    def zero(cls) -> "KFiniteFunction":
        return cls(())

    def scale(self, factor) -> "KFiniteFunction":
        return KFiniteFunction(tuple((kt, c * factor) for kt, c in self.terms))

    def evaluate(self, n: int, pt: BoundaryPoint) -> complex:
        return sum((c * zonal_harmonic(kt, n, pt) for kt, c in self.terms), 0j)

    def on_ball(self, n: int, rho, theta, weights=None) -> np.ndarray:
        """Values on (rho, theta) arrays, optionally with per-term coefficient multipliers."""
        out = np.zeros(np.broadcast(np.asarray(rho), np.asarray(theta)).shape, dtype=complex)
        for k, (kt, c) in enumerate(self.terms):
            w = 1.0 if weights is None else weights[k]
            out = out + c * w * zonal_on_ball(kt, n, rho, theta)
        return out


def _check_r(r: float) -> None:
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r = {r} must lie in [0, 1)")


# -- the two forms of the transform --------------------------------------------

def poisson_spectral(params: SpectralParams, f: KFiniteFunction, r: float, pt: BoundaryPoint) -> complex:
    """(P f)(r u) = sum coeff * Phi_{lam,l,p,q}(r) * phi_{p,q}(u)."""
    _check_r(r)
    return sum((c * generalized_spherical(params, kt, r) * zonal_harmonic(kt, params.n, pt)
                for kt, c in f.terms), 0j)


def poisson_quadrature(params: SpectralParams, f_zonal, r: float, grid: ZonalGrid | None = None) -> complex:
    """(P f)(r e_1) by direct integration of the kernel against f.

    ``f_zonal(xi, phi)`` must depend on omega only through omega_1 =
    cos(xi)(cos(phi) + y sin(phi)); then <r e_1, omega> = r omega_1 and the
    integral reduces to the (rho, theta) grid with rho = cos(xi).
    """
    _check_r(r)
    grid = zonal_grid(params.n) if grid is None else grid

    def integrand(rho, theta):
        re_u = r * rho * np.cos(theta)
        ker = kernel_from_pairing(params, r * r, re_u, (r * rho) ** 2)
        return ker * f_zonal(np.arccos(np.clip(rho, -1.0, 1.0)), theta)

    return zonal_integral(integrand, params.n, grid)


def ktype_zonal(kt: KTypeIndex, n: int):
    """phi_{p,q} as a function of (xi, phi), for :func:`poisson_quadrature`."""
    from .harmonics import zonal_profile

    return lambda xi, phi: zonal_profile(kt, n, xi, phi)


def poisson_quadrature_at(params: SpectralParams, kt: KTypeIndex, r: float, psi: float,
                          size: int = 96, gamma_size: int = 48) -> complex:
    """(P phi_{p,q})(r u) at u = (cos psi + v sin psi, 0, ..., 0) by a 3D reduced integral.

    With omega_1 = rho (cos theta + y sin theta) and <v, y> = cos(gamma),
    Re(conj(u_1) omega_1) = rho (cos psi cos theta + sin psi sin theta cos gamma);
    y uniform on the 2-sphere puts the weight sin(gamma)/2 on gamma.
    """
    _check_r(r)
    grid = zonal_grid(params.n, size)
    cg, wg = gauss_legendre(gamma_size)  # nodes in cos(gamma), weights sum to 2
    rr, tt = grid.mesh
    phi_vals = zonal_on_ball(kt, params.n, rr, tt)
    total = 0j
    for c, w in zip(cg, wg):
        re_u = r * rr * (math.cos(psi) * np.cos(tt) + math.sin(psi) * np.sin(tt) * c)
        ker = kernel_from_pairing(params, r * r, re_u, (r * rr) ** 2)
        total += 0.5 * w * complex(np.sum(ker * phi_vals * grid.density))
    return grid.c_n * total


# -- norms -------------------------------------------------------------------------

def _probability_weights(grid: ZonalGrid) -> np.ndarray:
    return grid.density / np.sum(grid.density)


def lp_norm(values: np.ndarray, p_exp: float, grid: ZonalGrid) -> float:
    """L^p norm over the sphere of a zonal function sampled on ``grid.mesh``."""
    if p_exp < 1:
        raise DomainError("p must be >= 1")
    w = _probability_weights(grid)
    return float(np.sum(np.abs(values) ** p_exp * w)) ** (1.0 / p_exp)


def kfinite_norm(f: KFiniteFunction, n: int, p_exp: float, grid: ZonalGrid | None = None) -> float:
    grid = zonal_grid(n) if grid is None else grid
    rr, tt = grid.mesh
    return lp_norm(f.on_ball(n, rr, tt), p_exp, grid)


@dataclass(frozen=True)
class HardyNormResult:
    value: float
    argmax_r: float
    samples: tuple[tuple[float, float], ...]
    limit: float | None = None  # scaled norm at r = 1 from extrapolated spherical limits


def scaled_norm(params: SpectralParams, f: KFiniteFunction, p_exp: float, r: float,
                grid: ZonalGrid | None = None) -> float:
    """(1 - r^2)^(-(2n+1-Re i lam)/2) * ||(P f)(r .)||_p."""
    _check_r(r)
    grid = zonal_grid(params.n) if grid is None else grid
    rr, tt = grid.mesh
    phis = [generalized_spherical(params, kt, r) for kt, _ in f.terms]
    vals = f.on_ball(params.n, rr, tt, weights=phis)
    expo = (2 * params.n + 1 - params.i_lambda.real) / 2
    return (1.0 - r * r) ** (-expo) * lp_norm(vals, p_exp, grid)


def hardy_limit(params: SpectralParams, f: KFiniteFunction, p_exp: float,
                grid: ZonalGrid | None = None, r_sequence=HARDY_LIMIT_RADII) -> float:
    """Scaled norm at r = 1, assembled from termwise extrapolated limits.

    The scaled Phi_{lam,l,p,q} share the phase (1-r^2)^(i Im(i lam)/2), which
    the modulus inside the norm removes; it is divided out before extrapolating.
    """
    grid = zonal_grid(params.n) if grid is None else grid
    rr, tt = grid.mesh
    limits = [spherical_limit(params, kt, r_sequence).value for kt, _ in f.terms]
    return lp_norm(f.on_ball(params.n, rr, tt, weights=limits), p_exp, grid)


def hardy_norm(params: SpectralParams, f: KFiniteFunction, p_exp: float, r_grid,
               grid: ZonalGrid | None = None, with_limit: bool = False) -> HardyNormResult:
    """Sup over ``r_grid`` of the scaled L^p norms of the Poisson transform.

    With ``with_limit`` the r -> 1 value joins the sup (reported as argmax 1.0).
    """
    params.require_asymptotic()
    if p_exp < 2:
        raise DomainError("p must be >= 2")
    r_grid = sorted(float(r) for r in r_grid)
    if not r_grid:
        raise DomainError("r_grid is empty")
    grid = zonal_grid(params.n) if grid is None else grid
    samples = tuple((r, scaled_norm(params, f, p_exp, r, grid)) for r in r_grid)
    best_r, best = max(samples, key=lambda s: s[1])
    limit = None
    if with_limit and f.terms:
        limit = hardy_limit(params, f, p_exp, grid)
        if limit > best:
            best_r, best = 1.0, limit
    return HardyNormResult(best, best_r, samples, limit)


DEFAULT_HARDY_GRID = tuple(1.0 - 10.0 ** (-k / 4) for k in range(1, 21))


@dataclass(frozen=True)
class SandwichResult:
    lower_ok: bool
    upper_ok: bool
    ratios: tuple[float, float]  # |C| ||f|| / sup and sup / (delta ||f||)
    f_norm: float
    hardy: HardyNormResult
    lower_constant: float
    upper_constant: float


def sandwich_check(params: SpectralParams, f: KFiniteFunction, p_exp: float,
                   r_grid=DEFAULT_HARDY_GRID, grid: ZonalGrid | None = None,
                   rtol: float = SANDWICH_RTOL) -> SandwichResult:
    """|C_l| ||f||_p <= ||P f||_{lam,*,p} <= delta_l ||f||_p, both up to ``rtol``.

    The lower bound is reached only as r -> 1, so the sup includes the limit.
    """
    grid = zonal_grid(params.n) if grid is None else grid
    lower = abs(c_constant(params))
    upper = delta_constant(params)
    fn = kfinite_norm(f, params.n, p_exp, grid)
    hn = hardy_norm(params, f, p_exp, r_grid, grid, with_limit=True)
    lower_ok = lower * fn <= hn.value * (1 + rtol)
    upper_ok = hn.value <= upper * fn * (1 + rtol)
    ratios = ((lower * fn / hn.value) if hn.value else 0.0, (hn.value / (upper * fn)) if fn else 0.0)
    return SandwichResult(lower_ok, upper_ok, ratios, fn, hn, lower, upper)


# -- inversion ------------------------------------------------------------------------

def inversion_approx(params: SpectralParams, f: KFiniteFunction, r: float) -> KFiniteFunction:
    """g_r = (1-r^2)^(-(2n+1-Re i lam)) sum |Phi_{lam,l,p,q}(r)|^2 f_{p,q}."""
    params.require_asymptotic()
    _check_r(r)
    expo = 2 * params.n + 1 - params.i_lambda.real
    scale = (1.0 - r * r) ** (-expo)
    return KFiniteFunction(tuple(
        (kt, c * (scale * abs(generalized_spherical(params, kt, r)) ** 2)) for kt, c in f.terms))


def inversion_error(params: SpectralParams, f: KFiniteFunction, r: float,
                    grid: ZonalGrid | None = None) -> float:
    """|| |C_l|^-2 g_r - f ||_2 on the sphere."""
    grid = zonal_grid(params.n) if grid is None else grid
    g = inversion_approx(params, f, r)
    inv = 1.0 / abs(c_constant(params)) ** 2
    diff = KFiniteFunction(tuple(
        (kt, gc * inv - fc) for (kt, gc), (_, fc) in zip(g.terms, f.terms)))
    return kfinite_norm(diff, params.n, 2.0, grid)
