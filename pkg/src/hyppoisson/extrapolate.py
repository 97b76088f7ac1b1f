"""Richardson-type extrapolation of a sequence f(h_k) to h = 0."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence


@dataclass(frozen=True)
class Extrapolation:
    value: complex
    previous: complex  # same extrapolation with the coarsest sample dropped
    spread: float  # |value - previous|


def richardson_limit(hs, values, rtol: float = 1e-4, atol: float = 0.0,
                     exponents=None) -> Extrapolation:
    """Extrapolate ``values[k] = f(hs[k])`` to h = 0.

    Model: f(h) = f(0) + sum_j a_j h^(e_j). With ``exponents=None`` the e_j are
    1, 2, ... (classical Richardson / Neville); otherwise the first
    ``len(hs) - 1`` entries of ``exponents`` are used, which may be complex.
    The estimate is compared with the one that drops the coarsest sample and
    the last exponent; a spread above ``rtol * |value| + atol`` raises
    NoConvergence.
    """
    hs = [float(h) for h in hs]
    values = [complex(v) for v in values]
    if len(hs) != len(values) or not hs:
        raise ValueError("need equally many steps and values")
    if len(set(hs)) != len(hs) or min(hs) <= 0:
        raise ValueError("steps must be distinct and positive")
    m = len(hs)
    if exponents is None:
        exponents = list(range(1, m))
    exponents = [complex(e) for e in exponents]
    if len(exponents) < m - 1:
        raise ValueError(f"need {m - 1} exponents, got {len(exponents)}")
    est = _fit(hs, values, exponents[: m - 1])
    prev = _fit(hs[1:], values[1:], exponents[: m - 2]) if m > 1 else est
    spread = abs(est - prev)
    if spread > rtol * abs(est) + atol:
        raise NoConvergence(f"extrapolation unstable: spread {spread:.3e} vs value {abs(est):.3e}")
    return Extrapolation(est, prev, spread)


def _fit(hs: list[float], values: list[complex], exponents: list[complex]) -> complex:
    if all(e.imag == 0 and e.real == k + 1 for k, e in enumerate(exponents)):
        return _neville(hs, values)
    h = np.asarray(hs)
    cols = [np.ones_like(h, dtype=complex)] + [np.exp(e * np.log(h)) for e in exponents]
    coef = np.linalg.solve(np.stack(cols, axis=1), np.asarray(values))
    return complex(coef[0])


def _neville(hs: list[float], values: list[complex]) -> complex:
    p = list(values)
    m = len(hs)
    for level in range(1, m):
        for i in range(m - level):
            j = i + level
            p[i] = (hs[j] * p[i] - hs[i] * p[i + 1]) / (hs[j] - hs[i])
    return p[0]
