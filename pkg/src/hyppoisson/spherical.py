"""Closed forms of the elementary and generalized spherical functions and their r -> 1 constants.

Throughout, ``r`` is the radius tanh(t) of the point r e_1 and
``s = (i lam + 2n + 1) / 2``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, ParameterPole, PoleError
from .extrapolate import Extrapolation, richardson_limit
from .harmonics import KTypeIndex
from .kernels import SpectralParams
from .special import _nonpositive_integer, complex_gamma, hyp2f1, pochhammer


def _cpow(base: float, exponent: complex) -> complex:
    # base > 0 always: principal branch, no ambiguity
    return cmath.exp(exponent * math.log(base))


def _check_radius(r: float) -> None:
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r = {r} must lie in [0, 1)")


def elementary_spherical(params: SpectralParams, r: float) -> complex:
    """Poisson transform of the constant 1 at r e_1:

    (pi/4)(2l+1) Gamma(2)Gamma(2n-2)/Gamma(2n) (1-r^2)^s 2F1(s+l, s-l-1; 2n; r^2).
    """
    _check_radius(r)
    n, l, s = params.n, params.l, params.s
    if _nonpositive_integer(complex(2 * n)):
        raise ParameterPole("2n must be positive")
    pref = math.pi / 4 * (2 * l + 1) * math.gamma(2) * math.gamma(2 * n - 2) / math.gamma(2 * n)
    return pref * _cpow(1.0 - r * r, s) * hyp2f1(s + l, s - l - 1, 2 * n, r * r)


@dataclass(frozen=True)
class GenSphericalTerms:
    prefactor: complex
    poch1a: complex
    poch1b: complex
    poch2a: complex
    poch2b: complex
    f1: complex
    f2: complex
    radial_exponent: int

    @property
    def bracket(self) -> complex:
        return self.poch1a * self.poch1b * self.f1 - self.poch2a * self.poch2b * self.f2

    @property
    def value(self) -> complex:
        return self.prefactor * self.bracket


def _exponent(kt: KTypeIndex, radial_exponent: str) -> int:
    if radial_exponent == "q":
        return kt.q
    if radial_exponent == "p":
        return kt.p
    raise ValueError("radial_exponent must be 'q' or 'p'")


def generalized_terms(params: SpectralParams, kt: KTypeIndex, r: float,
                      radial_exponent: str = "q") -> GenSphericalTerms:
    """Pieces of the generalized spherical function Phi_{lam,l,p,q}(r).

    ``radial_exponent`` selects the power of r in front of the bracket: ``"q"``
    (what the integration actually produces) or ``"p"``, kept for comparison.
    """
    _check_radius(r)
    n, l, s = params.n, params.l, params.s
    p, q = kt.p, kt.q
    half_sum, half_gap = (p + q) // 2, kt.half_gap
    c = q + 2 * n
    E = _exponent(kt, radial_exponent)
    z = r * r
    pref = (math.pi / (4 * (p + 1)) * math.gamma(2) * math.gamma(2 * n - 2) / math.gamma(c)
            * _cpow(1.0 - z, s) * r ** E)
    return GenSphericalTerms(
        prefactor=pref,
        poch1a=pochhammer(s + l, half_sum + 1),
        poch1b=pochhammer(s - l - 1, half_gap),
        poch2a=pochhammer(s - l - 1, half_sum + 1),
        poch2b=pochhammer(s + l, half_gap),
        f1=hyp2f1(s - l - 1 + half_gap, s + l + 1 + half_sum, c, z),
        f2=hyp2f1(s + l + half_gap, s - l + half_sum, c, z),
        radial_exponent=E,
    )


def generalized_spherical(params: SpectralParams, kt: KTypeIndex, r: float,
                          radial_exponent: str = "q") -> complex:
    """Scalar by which the Poisson transform acts on the K-type (p, q), evaluated at r."""
    return generalized_terms(params, kt, r, radial_exponent).value


def l0_collapsed_bracket(params: SpectralParams, kt: KTypeIndex, r: float) -> complex:
    """Bracket of the l = 0 case reduced to a single 2F1 by the contiguous relation:

    (p+1) (s-1)_alpha (s-1)_beta / (s-1) * 2F1(s-1+beta, s+alpha-1; q+2n; r^2),
    alpha = (p+q)/2 + 1, beta = (q-p)/2.
    """
    if params.twice_l != 0:
        raise DomainError("the collapse applies to l = 0 only")
    s = params.s
    alpha, beta = (kt.p + kt.q) // 2 + 1, kt.half_gap
    coef = (kt.p + 1) * pochhammer(s - 1, alpha) * pochhammer(s - 1, beta) / (s - 1)
    return coef * hyp2f1(s - 1 + beta, s - 1 + alpha, kt.q + 2 * params.n, r * r)


def _gamma_or_pole(z: complex) -> complex:
    if _nonpositive_integer(complex(z)):
        raise PoleError(f"Gamma pole at {z}")
    return complex_gamma(z)


def c_constant(params: SpectralParams) -> complex:
    """Limit constant (pi/4)(2l+1) Gamma(2n-2) Gamma(i lam) / (Gamma(s+l) Gamma(s-l-1))."""
    params.require_asymptotic()
    n, l, s = params.n, params.l, params.s
    return (math.pi / 4 * (2 * l + 1) * math.gamma(2 * n - 2) * _gamma_or_pole(params.i_lambda)
            / (_gamma_or_pole(s + l) * _gamma_or_pole(s - l - 1)))


def c_constant_limit_form(params: SpectralParams) -> complex:
    """Same constant written with Gamma(2s - 2n - 1) in place of Gamma(i lam)."""
    params.require_asymptotic()
    n, l, s = params.n, params.l, params.s
    return (math.pi / 4 * (2 * l + 1) * math.gamma(2 * n - 2) * _gamma_or_pole(2 * s - 2 * n - 1)
            / (_gamma_or_pole(s + l) * _gamma_or_pole(s - l - 1)))


def delta_constant(params: SpectralParams) -> float:
    """Upper Hardy constant (pi/4)(2l+1) Gamma(2n) Gamma(x) / (Gamma(s_x-l-1) Gamma(s_x+l)), x = Re(i lam)."""
    params.require_asymptotic()
    n, l = params.n, params.l
    x = params.i_lambda.real
    sx = (2 * n + 1 + x) / 2
    val = (math.pi / 4 * (2 * l + 1) * math.gamma(2 * n) * _gamma_or_pole(x)
           / (_gamma_or_pole(sx - l - 1) * _gamma_or_pole(sx + l)))
    return val.real


def decay_exponent(params: SpectralParams) -> complex:
    """(2n + 1 - i lam) / 2, the rate at which Phi_{lam,l,p,q}(r) vanishes in 1 - r^2."""
    return (2 * params.n + 1 - params.i_lambda) / 2


def scaled_generalized(params: SpectralParams, kt: KTypeIndex, r: float) -> complex:
    """(1 - r^2)^(-(2n+1-i lam)/2) Phi_{lam,l,p,q}(r)."""
    return _cpow(1.0 - r * r, -decay_exponent(params)) * generalized_spherical(params, kt, r)


DEFAULT_R_SEQUENCE = (0.9, 0.99, 0.999)


def correction_exponents(i_lambda: complex, count: int) -> list[complex]:
    """Powers of h = 1 - r^2 in the expansion of the scaled function near r = 1.

    The connection formula at z = 1 gives an analytic part (h^1, h^2, ...)
    and a second branch carrying h^(i lam), h^(i lam + 1), ...
    """
    pool = [complex(k) for k in range(1, count + 1)] + [i_lambda + k for k in range(count)]
    pool.sort(key=lambda e: (e.real, e.imag))
    out: list[complex] = []
    for e in pool:
        # an integer i lam merges the two branches (log terms); keep one copy
        if all(abs(e - f) > 1e-9 for f in out):
            out.append(e)
    return out[:count]


def spherical_limit(params: SpectralParams, kt: KTypeIndex,
                    r_sequence=DEFAULT_R_SEQUENCE, rtol: float = 1e-2) -> Extrapolation:
    """Richardson extrapolation of the scaled generalized spherical function to r = 1."""
    params.require_asymptotic()
    hs = [1.0 - r * r for r in r_sequence]
    vals = [scaled_generalized(params, kt, r) for r in r_sequence]
    exps = correction_exponents(params.i_lambda, len(hs) - 1)
    return richardson_limit(hs, vals, rtol=rtol, exponents=exps)


def limit_bracket(a, b, c, alpha: int, beta: int, z: float) -> complex:
    """(1-z)^(a+b+alpha+beta-c-1) [(a)_al (b)_be F(a+al, b+be; c; z) - (a)_be (b)_al F(a+be, b+al; c; z)]."""
    a, b, c = complex(a), complex(b), complex(c)
    expo = a + b + alpha + beta - c - 1
    bracket = (pochhammer(a, alpha) * pochhammer(b, beta) * hyp2f1(a + alpha, b + beta, c, z)
               - pochhammer(a, beta) * pochhammer(b, alpha) * hyp2f1(a + beta, b + alpha, c, z))
    return _cpow(1.0 - z, expo) * bracket


def limit_law_closed_form(a, b, c, alpha: int, beta: int) -> complex:
    """Gamma(c) Gamma(a+b+alpha+beta-c-1) (a-b)(alpha-beta) / (Gamma(a) Gamma(b))."""
    a, b, c = complex(a), complex(b), complex(c)
    if alpha == beta or a == b:
        return 0j
    return (complex_gamma(c) * complex_gamma(a + b + alpha + beta - c - 1) * (a - b) * (alpha - beta)
            / (complex_gamma(a) * complex_gamma(b)))


def limit_law_check(a, b, c, alpha: int, beta: int, z_sequence=DEFAULT_R_SEQUENCE,
                    rtol: float = 1e-4) -> tuple[complex, complex]:
    """Extrapolated z -> 1 limit of :func:`limit_bracket` next to its closed form."""
    if alpha < 0 or beta < 0 or int(alpha) != alpha or int(beta) != beta:
        raise DomainError("alpha and beta must be nonnegative integers")
    if not (complex(a) + complex(b) + alpha + beta - complex(c) - 1).real > 0:
        raise DomainError("need Re(a+b+alpha+beta-c-1) > 0")
    hs = [1.0 - z for z in z_sequence]
    vals = [limit_bracket(a, b, c, alpha, beta, z) for z in z_sequence]
    scale = max(abs(v) for v in vals)
    ext = richardson_limit(hs, vals, rtol=rtol, atol=1e-12 * scale)
    return ext.value, limit_law_closed_form(a, b, c, alpha, beta)
