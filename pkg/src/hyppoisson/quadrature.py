"""Gauss-Legendre product rules on the reduced boundary domain, and integral oracles.

A function on S^{4n-1} that depends on w_1 = rho (cos theta + y sin theta)
only through (rho, theta) integrates as

    c_n * int_0^1 int_0^pi g(rho, theta) (1 - rho^2)^(2n-3) rho^3 sin^2(theta) dtheta drho

where the exponent 2n - 3 is rho_G - 4 (four real dimensions of H) and c_n
is fitted once so that g = 1 has the mass of the elementary spherical
function at the origin.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import roots_jacobi

from .errors import DomainError, NoConvergence, NotNormalized
from .special import complex_gamma, hyp2f1

DEFAULT_GRID = 256
GRID_ENV = "HYPPOISSON_GRID"


def default_grid_size() -> int:
    raw = os.environ.get(GRID_ENV)
    if raw is None:
        return DEFAULT_GRID
    size = int(raw)
    if not 1 <= size <= 2048:
        raise DomainError(f"{GRID_ENV}={raw} must lie in [1, 2048]")
    return size


def gauss_legendre(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the k-point Gauss-Legendre rule on [-1, 1]."""
    if not 1 <= k <= 2048:
        raise DomainError(f"k = {k} must lie in [1, 2048]")
    return leggauss(k)


def _mapped(k: int, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = gauss_legendre(k)
    half = (hi - lo) / 2
    return lo + half * (x + 1.0), half * w


def reference_mass(n: int) -> float:
    """(pi/4) Gamma(2) Gamma(2n-2) / Gamma(2n): the elementary spherical function at r = 0, l = 0."""
    return math.pi / 4 * math.gamma(2) * math.gamma(2 * n - 2) / math.gamma(2 * n)


@dataclass(frozen=True)
class ZonalGrid:
    n: int
    size: int
    r_nodes: np.ndarray
    r_weights: np.ndarray
    theta_nodes: np.ndarray
    theta_weights: np.ndarray
    density: np.ndarray  # weights * (1-r^2)^(2n-3) r^3 sin^2(theta), shape (size, size)
    c_n: float | None = None

    @property
    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.r_nodes, self.theta_nodes, indexing="ij")


def build_grid(n: int, size: int | None = None) -> ZonalGrid:
    """Unnormalized product grid; see :func:`normalize_measure`."""
    if n < 2:
        raise DomainError("n must be >= 2")
    size = default_grid_size() if size is None else size
    r, wr = _mapped(size, 0.0, 1.0)
    t, wt = _mapped(size, 0.0, math.pi)
    radial = wr * (1.0 - r * r) ** (2 * n - 3) * r ** 3
    angular = wt * np.sin(t) ** 2
    density = np.outer(radial, angular)
    for arr in (r, wr, t, wt, density):
        arr.setflags(write=False)
    return ZonalGrid(n, size, r, wr, t, wt, density)


def normalize_measure(n: int, grid: ZonalGrid) -> float:
    """Measure constant c_n making the constant function integrate to ``reference_mass(n)``."""
    if grid.n != n:
        raise DomainError(f"grid was built for n = {grid.n}, not {n}")
    return reference_mass(n) / float(np.sum(grid.density))


def normalized(grid: ZonalGrid) -> ZonalGrid:
    return replace(grid, c_n=normalize_measure(grid.n, grid))


@lru_cache(maxsize=16)
def _cached_grid(n: int, size: int) -> ZonalGrid:
    return normalized(build_grid(n, size))


def zonal_grid(n: int, size: int | None = None) -> ZonalGrid:
    """Built and normalized grid, cached per (n, size)."""
    return _cached_grid(n, default_grid_size() if size is None else size)


def zonal_integral(g, n: int, grid: ZonalGrid) -> complex:
    """c_n * sum of weights * g(r, theta) * density over the product grid.

    ``g`` is called once with the two meshgrid arrays and must broadcast.
    """
    if grid.c_n is None:
        raise NotNormalized("fit the measure constant with normalize_measure first")
    if grid.n != n:
        raise DomainError(f"grid was built for n = {grid.n}, not {n}")
    rr, tt = grid.mesh
    vals = np.broadcast_to(g(rr, tt), rr.shape)
    # numpy's pairwise summation over a fixed layout keeps this bit-reproducible
    return complex(grid.c_n * np.sum(vals * grid.density))


def refined_integral(g, n: int, size: int) -> tuple[complex, float]:
    """Integral on a ``size`` grid with error estimate |I(size) - I(size/2)|."""
    fine = zonal_integral(g, n, zonal_grid(n, size))
    coarse = zonal_integral(g, n, zonal_grid(n, max(1, size // 2)))
    return fine, abs(fine - coarse)


# -- classical integral identities ------------------------------------------------

def _periodic_trapezoid(f, tol: float = 1e-14, start: int = 64, max_points: int = 1 << 16) -> complex:
    """Trapezoid rule over one period of ``f``, doubled until two passes agree."""
    m = start
    prev = None
    while m <= max_points:
        theta = -math.pi + 2 * math.pi * np.arange(m) / m
        vals = f(theta)
        val = complex(np.sum(vals) * (2 * math.pi / m))
        # cancellation-aware scale: the integral of |f|
        scale = max(1.0, float(np.sum(np.abs(vals))) * (2 * math.pi / m))
        if prev is not None and abs(val - prev) <= tol * scale:
            return val
        prev = val
        m *= 2
    raise NoConvergence("periodic trapezoid rule did not converge")


def takahashi_check(alpha, beta, eta: float) -> tuple[complex, complex]:
    """Both sides of

        int_{-pi}^{pi} sin t / ((1 + eta e^{it})^alpha (1 + eta e^{-it})^beta) dt
            = (beta - alpha) eta pi i 2F1(alpha, beta; 2; eta^2).
    """
    alpha, beta = complex(alpha), complex(beta)
    if not 0.0 <= eta < 1.0:
        raise DomainError("eta must lie in [0, 1)")

    def integrand(t):
        e = np.exp(1j * t)
        return np.sin(t) * np.exp(-alpha * np.log(1 + eta * e) - beta * np.log(1 + eta / e))

    lhs = _periodic_trapezoid(integrand)
    rhs = (beta - alpha) * eta * math.pi * 1j * hyp2f1(alpha, beta, 2, eta * eta)
    return lhs, rhs


def bateman_check(a, b, c, sp, z: float, start: int = 16, max_nodes: int = 512,
                  tol: float = 1e-11) -> tuple[complex, complex]:
    """Both sides of Bateman's integral

        2F1(a,b;c;z) = Gamma(c)/(Gamma(sp) Gamma(c-sp)) int_0^1 x^(sp-1) (1-x)^(c-sp-1) 2F1(a,b;sp;xz) dx,

    the right side by Gauss-Jacobi quadrature absorbing the real endpoint powers.
    Node doubling stops at ``tol``; the Gauss-Jacobi weights themselves carry
    ~1e-13 relative noise that grows with the node count, so ``tol`` must stay above it.
    """
    a, b, c, sp = complex(a), complex(b), complex(c), complex(sp)
    if not (c.real > sp.real > 0):
        raise DomainError("need Re(c) > Re(sp) > 0")
    if not 0.0 <= z < 1.0:
        raise DomainError("z must lie in [0, 1)")
    lhs = hyp2f1(a, b, c, z)
    # weight (1-t)^ja (1+t)^jb on [-1,1] with x = (1+t)/2
    ja, jb = (c - sp).real - 1.0, sp.real - 1.0
    im_left, im_right = 1j * sp.imag, 1j * (c - sp).imag
    norm = complex_gamma(c) / (complex_gamma(sp) * complex_gamma(c - sp))
    k = start
    prev = None
    while k <= max_nodes:
        t, w = roots_jacobi(k, ja, jb)
        x = (1.0 + t) / 2.0
        vals = np.array([hyp2f1(a, b, sp, xi * z) for xi in x])
        vals = vals * np.exp(im_left * np.log(x) + im_right * np.log1p(-x))
        integral = complex(np.sum(w * vals)) / 2.0 ** (ja + jb + 1.0)
        rhs = norm * integral
        if prev is not None and abs(rhs - prev) <= tol * max(1.0, abs(rhs)):
            return lhs, rhs
        prev = rhs
        k *= 2
    raise NoConvergence("Gauss-Jacobi refinement did not converge")
