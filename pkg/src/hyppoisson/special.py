"""Complex gamma, Pochhammer symbols, Gauss 2F1 and classical orthogonal polynomials.

Everything here works on Python ``complex`` scalars (the hypergeometric
routines) or on numpy arrays of real abscissae (the polynomial routines).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from scipy.special import digamma

from .errors import DomainError, NoConvergence, ParameterPole, PoleError

POLE_TOL = 1e-12
MAX_TERMS = 100_000
DEFAULT_TOL = 1e-15
# Above this |z| the direct series is abandoned for a transformation.
SERIES_RADIUS = 0.85
# Minimal distance of c-a-b from the integers for the 1-z connection formula;
# its two Gamma(+-(c-a-b)) terms cancel, losing about eps / gap.
DEGENERACY_GAP = 1e-4
# Closer than this, c-a-b counts as an integer and the logarithmic formula applies.
INTEGER_GAP = 1e-12

# Lanczos approximation, g = 671/128 with 14 coefficients (Numerical Recipes, 3rd ed.).
_LANCZOS_G = 5.24218750000000000
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS_COEF = (
    57.1562356658629235, -59.5979603554754912, 14.1360979747417471,
    -0.491913816097620199, 0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5,
)
_SQRT_2PI = 2.5066282746310005


def _nonpositive_integer(z: complex, tol: float = POLE_TOL) -> bool:
    return abs(z.imag) <= tol and z.real <= tol and abs(z.real - round(z.real)) <= tol


def _lanczos(z: complex) -> complex:
    # valid for Re z >= 1/2
    t = z + _LANCZOS_G
    ser = _LANCZOS_C0
    y = z
    for c in _LANCZOS_COEF:
        y += 1.0
        ser += c / y
    return cmath.exp((z + 0.5) * cmath.log(t) - t) * _SQRT_2PI * ser / z


def complex_gamma(z) -> complex:
    """Gamma function of a complex argument.

    Lanczos approximation on Re z >= 1/2, reflection formula elsewhere.
    Raises PoleError within 1e-12 of a nonpositive integer.
    """
    z = complex(z)
    if _nonpositive_integer(z):
        raise PoleError(f"gamma has a pole at {z}")
    if z.imag == 0.0 and z.real == round(z.real) and 0 < z.real <= 171:
        return complex(math.factorial(int(z.real) - 1))
    if z.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * z) * _lanczos(1.0 - z))
    return _lanczos(z)


def rgamma(z) -> complex:
    """1/Gamma(z), which is entire: returns 0 at the poles of Gamma."""
    z = complex(z)
    if _nonpositive_integer(z):
        return 0j
    return 1.0 / complex_gamma(z)


def pochhammer(a, k: int) -> complex:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1), by direct product."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    a = complex(a)
    out = 1 + 0j
    for j in range(k):
        out *= a + j
    return out


def binomial(x: float, k: int) -> float:
    """Generalized binomial coefficient C(x, k) for real x and integer k >= 0."""
    out = 1.0
    for j in range(1, k + 1):
        out *= (x - k + j) / j
    return out


@dataclass(frozen=True)
class SeriesResult:
    """Value of a hypergeometric evaluation.

    ``truncation_bound`` estimates the neglected tail relative to
    ``max(1, |value|)``; it never exceeds the requested tolerance on return.
    """

    value: complex
    terms_used: int
    truncation_bound: float


def _terminating_degree(a: complex) -> int | None:
    if _nonpositive_integer(a):
        return int(round(-a.real))
    return None


def _series(a: complex, b: complex, c: complex, z: float, tol: float, max_terms: int,
            terms: int | None = None) -> SeriesResult:
    """Sum the Gauss series directly. ``terms`` forces a finite (terminating) sum."""
    total = 1 + 0j
    term = 1 + 0j
    if terms is not None:
        for k in range(terms):
            term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
            total += term
        return SeriesResult(total, terms + 1, 0.0)
    az = abs(z)
    k = 0
    while k < max_terms:
        ratio = (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        term *= ratio
        total += term
        k += 1
        if term == 0:
            return SeriesResult(total, k + 1, 0.0)
        rho = max(abs(ratio), az)
        if rho < 1.0:
            tail = abs(term) * rho / (1.0 - rho)
            bound = tail / max(1.0, abs(total))
            # the ratio only becomes a reliable tail envelope once k exceeds the parameters
            if bound <= tol and k > abs(a) + abs(b) + abs(c):
                return SeriesResult(total, k + 1, bound)
    raise NoConvergence(f"2F1({a}, {b}; {c}; {z}) did not converge in {max_terms} terms")


def _gap_to_integers(d: complex) -> float:
    return abs(d - round(d.real))


def _log_case(a: complex, b: complex, m: int, w: float, tol: float, max_terms: int) -> SeriesResult:
    """2F1(a, b; a+b+m; 1-w) for an integer m >= 0 (Abramowitz-Stegun 15.3.10-11).

    F = Gamma(m) Gamma(c) / (Gamma(a+m) Gamma(b+m)) sum_{k<m} (a)_k (b)_k / (k! (1-m)_k) w^k
        - (-w)^m Gamma(c) / (Gamma(a) Gamma(b)) sum_k t_k [ln w - psi(k+1) - psi(k+m+1)
                                                        + psi(a+k+m) + psi(b+k+m)],
    t_k = (a+m)_k (b+m)_k / (k! (k+m)!) w^k.
    """
    c = a + b + m
    gc = complex_gamma(c)
    finite = 0j
    if m > 0:
        term = 1 + 0j
        for k in range(m):
            finite += term
            if k < m - 1:
                term *= (a + k) * (b + k) / ((k + 1) * (1 - m + k)) * w
        finite *= math.factorial(m - 1) * gc * rgamma(a + m) * rgamma(b + m)
    lw = math.log(w)
    # digammas, advanced by psi(x+1) = psi(x) + 1/x
    p1 = complex(digamma(1.0))
    pm = complex(digamma(m + 1.0))
    pa = complex(digamma(a + m))
    pb = complex(digamma(b + m))
    t = 1.0 / math.factorial(m) + 0j
    total = 0j
    k = 0
    while k < max_terms:
        total += t * (lw - p1 - pm + pa + pb)
        ratio = (a + m + k) * (b + m + k) / ((k + 1) * (k + m + 1)) * w
        p1 += 1.0 / (k + 1)
        pm += 1.0 / (k + m + 1)
        pa += 1.0 / (a + m + k)
        pb += 1.0 / (b + m + k)
        t *= ratio
        k += 1
        rho = max(abs(ratio), w)
        if t == 0:
            break
        if rho < 1.0 and k > abs(a) + abs(b) + m:
            # the bracket grows like log k; a factor 2 covers it over the tail
            tail = 2.0 * abs(t) * (abs(lw) + abs(pa) + abs(pb) + 2 * math.log(k + m + 1) + 1) * rho / (1 - rho)
            if tail <= tol * max(1.0, abs(total)):
                break
    else:
        raise NoConvergence(f"logarithmic 2F1 case (a={a}, b={b}, m={m}) did not converge")
    value = finite - (-w) ** m * gc * rgamma(a) * rgamma(b) * total
    return SeriesResult(value, k + m, tol)


def _near_one(a: complex, b: complex, c: complex, z: float, tol: float, max_terms: int) -> SeriesResult:
    d = c - a - b
    w = 1.0 - z
    gap = _gap_to_integers(d)
    if gap <= INTEGER_GAP:
        m = int(round(d.real))
        if m >= 0:
            return _log_case(a, b, m, w, tol, max_terms)
        # Euler: 2F1(a,b;c;z) = w^(c-a-b) 2F1(c-a, c-b; c; z), whose gap is -m
        r = _log_case(c - a, c - b, -m, w, tol, max_terms)
        return SeriesResult(w ** m * r.value, r.terms_used, r.truncation_bound)
    if gap >= DEGENERACY_GAP:
        # connection formula onto 1 - z, where the series converges fast
        g1 = complex_gamma(c) * complex_gamma(d) * rgamma(c - a) * rgamma(c - b)
        g2 = complex_gamma(c) * complex_gamma(-d) * rgamma(a) * rgamma(b)
        r1 = _series(a, b, 1.0 - d, w, tol, max_terms) if g1 != 0 else SeriesResult(0j, 0, 0.0)
        r2 = _series(c - a, c - b, 1.0 + d, w, tol, max_terms) if g2 != 0 else SeriesResult(0j, 0, 0.0)
        value = g1 * r1.value + g2 * cmath.exp(d * math.log(w)) * r2.value
        return SeriesResult(value, r1.terms_used + r2.terms_used,
                            max(r1.truncation_bound, r2.truncation_bound))
    if d.real < 0:
        # Euler transformation: the transformed terms decay faster by k^(2 Re d)
        r = _series(c - a, c - b, c, z, tol, max_terms)
        return SeriesResult(cmath.exp(d * math.log(w)) * r.value, r.terms_used, r.truncation_bound)
    return _series(a, b, c, z, tol, max_terms)


def gauss_2f1(a, b, c, z: float, tol: float = DEFAULT_TOL, max_terms: int = MAX_TERMS) -> SeriesResult:
    """Gauss hypergeometric function 2F1(a, b; c; z) for real z < 1.

    |z| <= 0.85 sums the series directly. For z > 0.85: the 1 - z connection
    formula when c - a - b is at least 1e-4 away from the integers, its
    logarithmic limit when c - a - b is an integer, and the Euler-transformed
    direct series in between. z < -0.85 is mapped to (0, 1) by the Pfaff
    transformation. Terminating series are summed exactly for any z.
    """
    a, b, c = complex(a), complex(b), complex(c)
    z = float(z)
    if _nonpositive_integer(c):
        raise ParameterPole(f"c = {c} is a nonpositive integer")
    if not z < 1.0:
        raise DomainError(f"z = {z} must be < 1")
    # canonical parameter order makes F(a,b) and F(b,a) the same computation
    if (b.real, b.imag) < (a.real, a.imag):
        a, b = b, a
    if z == 0.0:
        return SeriesResult(1 + 0j, 1, 0.0)
    degrees = [d for d in (_terminating_degree(a), _terminating_degree(b)) if d is not None]
    if degrees:
        return _series(a, b, c, z, tol, max_terms, terms=min(degrees))
    if abs(z) <= SERIES_RADIUS:
        return _series(a, b, c, z, tol, max_terms)
    if z > 0:
        return _near_one(a, b, c, z, tol, max_terms)
    w = z / (z - 1.0)
    r = gauss_2f1(a, c - b, c, w, tol, max_terms)
    return SeriesResult(cmath.exp(-a * math.log(1.0 - z)) * r.value, r.terms_used, r.truncation_bound)


def hyp2f1(a, b, c, z: float, tol: float = DEFAULT_TOL) -> complex:
    """Shorthand for ``gauss_2f1(...).value``."""
    return gauss_2f1(a, b, c, z, tol).value


def pfaff_transform(a, b, c, z: float) -> complex:
    """Right-hand side of 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1))."""
    a, b, c = complex(a), complex(b), complex(c)
    z = float(z)
    if not 0.0 <= z < 1.0:
        raise DomainError(f"z = {z} must lie in [0, 1)")
    w = z / (z - 1.0) if z else 0.0
    return cmath.exp(-a * math.log(1.0 - z)) * gauss_2f1(a, c - b, c, w).value


def contiguous_relation_residual(a, b, c, z: float, rhs_sign: int = 1) -> float:
    """Residual of a F(a+1,b;c;z) - b F(a,b+1;c;z) = rhs_sign (a-b) F(a,b;c;z).

    ``rhs_sign=+1`` is the classical relation, ``-1`` the (b-a) variant.
    Returns |LHS - RHS| / max(1, |RHS|).
    """
    a, b, c = complex(a), complex(b), complex(c)
    lhs = a * hyp2f1(a + 1, b, c, z) - b * hyp2f1(a, b + 1, c, z)
    rhs = rhs_sign * (a - b) * hyp2f1(a, b, c, z)
    return abs(lhs - rhs) / max(1.0, abs(rhs))


def gegenbauer_c1(m: int, x):
    """Gegenbauer polynomial C^1_m(x) (Chebyshev U_m) by the three-term recurrence.

    Equals sin((m+1) t)/sin t at x = cos t, with value m+1 at x = 1.
    """
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if m == 0:
        return prev if prev.ndim else float(prev)
    cur = 2.0 * x
    for _ in range(1, m):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur if cur.ndim else float(cur)


def jacobi_poly(N: int, alpha: float, beta: float, x):
    """Jacobi polynomial P_N^(alpha, beta)(x) by the standard three-term recurrence."""
    if alpha <= -1 or beta <= -1:
        raise DomainError("alpha and beta must exceed -1")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if N == 0:
        return prev if prev.ndim else float(prev)
    cur = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0
    ab = alpha + beta
    for k in range(1, N):
        c2k = 2 * k + ab
        a1 = 2.0 * (k + 1) * (k + ab + 1) * c2k
        a2 = (c2k + 1) * (alpha * alpha - beta * beta)
        a3 = (c2k + 1) * (c2k + 2) * c2k
        a4 = 2.0 * (k + alpha) * (k + beta) * (c2k + 2)
        prev, cur = cur, ((a2 + a3 * x) * cur - a4 * prev) / a1
    return cur if cur.ndim else float(cur)


def jacobi_via_2f1(N: int, alpha: float, beta: float, x):
    """P_N^(alpha, beta)(x) = C(N+alpha, N) 2F1(-N, N+alpha+beta+1; alpha+1; (1-x)/2).

    The terminating sum alternates in sign and cancels badly near x = -1 in
    floating point, so it is summed in exact rational arithmetic (floats
    convert to fractions without rounding). Meant as a reference, not a hot path.
    """
    xs = np.asarray(x, dtype=float)
    al, be = Fraction(alpha), Fraction(beta)
    out = np.empty(xs.shape)
    flat = out.reshape(-1)
    for i, xv in enumerate(xs.reshape(-1)):
        t = (1 - Fraction(float(xv))) / 2
        term = total = Fraction(1)
        for k in range(N):
            term = term * (-N + k) * (N + al + be + 1 + k) / ((al + 1 + k) * (k + 1)) * t
            total += term
        coef = Fraction(1)
        for k in range(N):
            coef = coef * (al + N - k) / (k + 1)
        flat[i] = float(coef * total)
    return out if out.ndim else float(out)


def rodrigues_jacobi(N: int, alpha: int, beta: int, x):
    """P_N^(alpha, beta)(x) from the Rodrigues formula, differentiating exactly.

    (-1)^N / (2^N N!) (1-x)^-alpha (1+x)^-beta d^N/dx^N [(1-x)^(N+alpha) (1+x)^(N+beta)],
    for integer alpha, beta >= 0. The N-th derivative is expanded by the Leibniz
    rule and the weights (1-x)^alpha (1+x)^beta are cancelled termwise.
    """
    if int(alpha) != alpha or int(beta) != beta or alpha < 0 or beta < 0:
        raise DomainError("the exact Rodrigues form needs integer alpha, beta >= 0")
    alpha, beta = int(alpha), int(beta)
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for k in range(N + 1):
        # d^k (1-x)^(N+alpha) and d^(N-k) (1+x)^(N+beta)
        coef = math.comb(N, k) * math.perm(N + alpha, k) * (-1) ** k * math.perm(N + beta, N - k)
        total = total + coef * (1.0 - x) ** (N - k) * (1.0 + x) ** k
    return (-1) ** N / (2.0 ** N * math.factorial(N)) * total
