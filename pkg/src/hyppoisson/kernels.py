"""Quaternions, the Hermitian pairing on H^n, the Sp(1) character and the Poisson kernel.

Vectors of H^n are numpy arrays of shape ``(n, 4)``; a quaternion row is
``(w, x, y, z)`` with ``w`` the real part. The pairing is
``<x, w> = sum_j conj(x_j) w_j`` (conjugate-linear in the first slot).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ZeroQuaternion
from .special import gegenbauer_c1

BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class Quaternion:
    w: float
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        return cls(*(float(v) for v in a))

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    @property
    def real(self) -> float:
        return self.w

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def __abs__(self) -> float:
        return math.sqrt(self.norm2())

    def __add__(self, other):
        other = _as_quaternion(other)
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __sub__(self, other):
        return self + (-_as_quaternion(other))

    def __rsub__(self, other):
        return _as_quaternion(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return Quaternion.from_array(qmul(self.to_array(), other.to_array()))

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def __truediv__(self, scalar: float):
        return self * (1.0 / scalar)


def _as_quaternion(v) -> Quaternion:
    if isinstance(v, Quaternion):
        return v
    return Quaternion(float(v))


# -- vectorized quaternion algebra on trailing axis of length 4 --------------

def qmul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Hamilton product, broadcasting over leading axes."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    a1, b1, c1, d1 = np.moveaxis(p, -1, 0)
    a2, b2, c2, d2 = np.moveaxis(q, -1, 0)
    return np.stack([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ], axis=-1)


def qconj(q: np.ndarray) -> np.ndarray:
    return np.asarray(q, dtype=float) * np.array([1.0, -1.0, -1.0, -1.0])


def hnorm(x: np.ndarray) -> float:
    """Euclidean norm of a vector of H^n."""
    return float(np.sqrt(np.sum(np.asarray(x, dtype=float) ** 2)))


def pairing(x: np.ndarray, omega: np.ndarray) -> Quaternion:
    """<x, omega> = sum_j conj(x_j) omega_j."""
    return Quaternion.from_array(qmul(qconj(x), omega).sum(axis=0))


def matvec(A: np.ndarray, x: np.ndarray) -> np.ndarray:
    """(A x)_i = sum_k A_ik x_k for a quaternionic matrix ``A`` of shape (n, n, 4)."""
    return qmul(A, x[np.newaxis, :, :]).sum(axis=1)


def random_sp(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random element of Sp(n): quaternionic Gram-Schmidt on a Gaussian matrix.

    Columns are orthonormal for the pairing, so conj(A)^T A = I.
    """
    cols: list[np.ndarray] = []
    raw = rng.standard_normal((n, n, 4))
    for j in range(n):
        v = raw[:, j, :].copy()
        for u in cols:
            coef = qmul(qconj(u), v).sum(axis=0)
            v = v - qmul(u, coef[np.newaxis, :])
        cols.append(v / hnorm(v))
    return np.stack(cols, axis=1)


def random_unit_quaternion(rng: np.random.Generator) -> np.ndarray:
    d = rng.standard_normal(4)
    return d / np.linalg.norm(d)


def act_k(A: np.ndarray, D: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Action of k = diag(A, D) in K on H^n: x -> A x conj(D)."""
    return qmul(matvec(A, x), qconj(D)[np.newaxis, :])


# -- spectral parameters -------------------------------------------------------

@dataclass(frozen=True)
class SpectralParams:
    """Dimension ``n >= 2``, Sp(1) type ``l = twice_l / 2`` and spectral parameter ``lam``.

    The kernel exponent is ``s = (i lam + rho) / 2`` with ``rho = 2n + 1``.
    """

    n: int
    twice_l: int
    lam: complex

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n = {self.n} must be an integer >= 2")
        if int(self.twice_l) != self.twice_l or self.twice_l < 0:
            raise DomainError(f"twice_l = {self.twice_l} must be a nonnegative integer")
        object.__setattr__(self, "lam", complex(self.lam))
        if not (math.isfinite(self.lam.real) and math.isfinite(self.lam.imag)):
            raise DomainError("lambda must be finite")

    @classmethod
    def from_i_lambda(cls, n: int, twice_l: int, i_lam) -> "SpectralParams":
        """Build from the value of i*lambda, the natural coordinate of most formulas."""
        return cls(n, twice_l, -1j * complex(i_lam))

    @property
    def rho(self) -> int:
        return 2 * self.n + 1

    @property
    def l(self) -> float:
        return self.twice_l / 2

    @property
    def i_lambda(self) -> complex:
        return 1j * self.lam

    @property
    def s(self) -> complex:
        return (self.i_lambda + self.rho) / 2

    def require_asymptotic(self) -> None:
        if not self.i_lambda.real > 0:
            raise DomainError(f"Re(i lambda) = {self.i_lambda.real} must be > 0")


# -- character and kernel --------------------------------------------------------

def chi_l(twice_l: int, q) -> float:
    """Character of the (2l+1)-dimensional Sp(1) representation at q/|q|."""
    q = _as_quaternion(q)
    mod = abs(q)
    if mod == 0.0:
        raise ZeroQuaternion("chi_l is undefined at q = 0")
    return gegenbauer_c1(twice_l, min(1.0, max(-1.0, q.real / mod)))


def kernel_from_pairing(params: SpectralParams, x_norm2, re_u, u_norm2):
    """Poisson kernel as a function of |x|^2, Re<x,w> and |<x,w>|^2 (vectorized).

    |1-u|^2 = 1 - 2 Re u + |u|^2 and the character sees only Re(1-u)/|1-u|.
    """
    x_norm2 = np.asarray(x_norm2, dtype=float)
    re_u = np.asarray(re_u, dtype=float)
    dist2 = 1.0 - 2.0 * re_u + np.asarray(u_norm2, dtype=float)
    base = (1.0 - x_norm2) / dist2
    cos_angle = np.clip((1.0 - re_u) / np.sqrt(dist2), -1.0, 1.0)
    return np.exp(params.s * np.log(base)) * gegenbauer_c1(params.twice_l, cos_angle)


def poisson_kernel(params: SpectralParams, x: np.ndarray, omega: np.ndarray) -> complex:
    """Generalized Poisson kernel P_{lam,l}(x, omega) for |x| < 1 and |omega| = 1."""
    x = np.asarray(x, dtype=float)
    omega = np.asarray(omega, dtype=float)
    if x.shape != (params.n, 4) or omega.shape != (params.n, 4):
        raise DomainError(f"expected vectors of shape ({params.n}, 4)")
    x_norm = hnorm(x)
    if not x_norm < 1.0 - BOUNDARY_TOL:
        raise DomainError(f"|x| = {x_norm} is not inside the open unit ball")
    if abs(hnorm(omega) - 1.0) >= BOUNDARY_TOL:
        raise DomainError("omega must lie on the unit sphere")
    u = pairing(x, omega)
    dist = abs(1.0 - u)
    base = (1.0 - x_norm * x_norm) / (dist * dist)
    return cmath.exp(params.s * math.log(base)) * chi_l(params.twice_l, 1.0 - u)


def radial_point(n: int, r: float) -> np.ndarray:
    """The point r e_1 of H^n."""
    x = np.zeros((n, 4))
    x[0, 0] = r
    return x
