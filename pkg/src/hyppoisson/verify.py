"""Named identity checks shared by the ``verify`` command and the acceptance tests.

Every check returns a :class:`CheckResult`; the report serializes to
``{check_name, residual, tolerance, pass, runtime_ms}`` entries. All random
inputs come from fixed seeds, so repeated runs are bit-identical.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .harmonics import BoundaryPoint, KTypeIndex, ktype_enumerate, zonal_harmonic
from .kernels import (
    SpectralParams,
    act_k,
    poisson_kernel,
    random_sp,
    random_unit_quaternion,
)
from .quadrature import bateman_check, takahashi_check, zonal_grid
from .special import contiguous_relation_residual, jacobi_poly, rodrigues_jacobi
from .spherical import (
    c_constant,
    elementary_spherical,
    generalized_spherical,
    generalized_terms,
    l0_collapsed_bracket,
    limit_law_check,
    spherical_limit,
)
from .transform import (
    KFiniteFunction,
    inversion_error,
    ktype_zonal,
    poisson_quadrature,
    poisson_quadrature_at,
    sandwich_check,
)

SEED = 20240917
R_PROFILE = tuple(k / 10 for k in range(1, 10))
SCALARITY_KTYPES = (KTypeIndex(0, 0), KTypeIndex(1, 1), KTypeIndex(0, 2), KTypeIndex(2, 2), KTypeIndex(1, 3))
LIMIT_KTYPES = (KTypeIndex(0, 0), KTypeIndex(1, 1), KTypeIndex(0, 2), KTypeIndex(2, 2))
# below Re(i lam) ~ 2 the h^(i lam) correction is too strong for three radii
LIMIT_I_LAMBDAS = (2.5, 2.2 + 0.8j)
INVERSION_I_LAMBDA = 1.5 + 0.5j
INVERSION_RADII = (0.9, 0.99, 0.999)

DEFAULT_TOLERANCES = {
    "takahashi": 1e-8,
    "bateman": 1e-8,
    "contiguous": 1e-10,
    "rodrigues": 1e-11,
    "kernel_invariance": 1e-11,
    "elementary": 1e-6,
    "scalarity": 1e-5,
    "limit": 1e-3,
    "remark54": 1e-8,
    "sandwich": 1e-3,
    "inversion": 1e-2,
}


@dataclass
class CheckResult:
    check_name: str
    residual: float
    tolerance: float
    passed: bool
    runtime_ms: float | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "check_name": self.check_name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "runtime_ms": round(self.runtime_ms, 3) if timings and self.runtime_ms is not None else None,
        }


def _result(name: str, residual: float, tol: float, details=None, passed=None) -> CheckResult:
    ok = residual <= tol if passed is None else passed
    return CheckResult(name, float(residual), tol, bool(ok), details=details or {})


def _rng(tag: int) -> np.random.Generator:
    return np.random.default_rng([SEED, tag])


def _cplx(rng: np.random.Generator, radius: float) -> complex:
    mod = radius * math.sqrt(rng.uniform())
    arg = rng.uniform(0, 2 * math.pi)
    return complex(mod * math.cos(arg), mod * math.sin(arg))


# -- special-function identities ----------------------------------------------------

def check_takahashi(tol: float = DEFAULT_TOLERANCES["takahashi"], samples: int = 20) -> CheckResult:
    rng = _rng(1)
    worst = 0.0
    for _ in range(samples):
        a, b = _cplx(rng, 4.0), _cplx(rng, 4.0)
        for eta in (0.1, 0.5, 0.9):
            lhs, rhs = takahashi_check(a, b, eta)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return _result("takahashi", worst, tol)


def check_bateman(tol: float = DEFAULT_TOLERANCES["bateman"], samples: int = 20) -> CheckResult:
    rng = _rng(2)
    worst = 0.0
    for _ in range(samples):
        a, b = _cplx(rng, 3.0), _cplx(rng, 3.0)
        # real sp and c: complex ones put log-oscillations x^(i t) at the endpoints
        sp = rng.uniform(0.5, 3.0)
        c = sp + rng.uniform(0.5, 3.0)
        z = rng.uniform(0.0, 0.9)
        lhs, rhs = bateman_check(a, b, c, sp, z)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return _result("bateman", worst, tol)


def check_contiguous(tol: float = DEFAULT_TOLERANCES["contiguous"], samples: int = 50) -> CheckResult:
    """Both signs of the right-hand side are tried; the one that holds is recorded."""
    rng = _rng(3)
    worst = {1: 0.0, -1: 0.0}
    for _ in range(samples):
        a, b = _cplx(rng, 3.0), _cplx(rng, 3.0)
        c = complex(rng.uniform(0.5, 5.0), rng.uniform(-1, 1))
        for z in (0.2, 0.6, 0.9):
            for sign in (1, -1):
                worst[sign] = max(worst[sign], contiguous_relation_residual(a, b, c, z, sign))
    sign = min(worst, key=worst.get)
    details = {"sign": "(a-b)" if sign == 1 else "(b-a)",
               "residual_a_minus_b": worst[1], "residual_b_minus_a": worst[-1]}
    return _result("contiguous", worst[sign], tol, details)


def check_rodrigues(tol: float = DEFAULT_TOLERANCES["rodrigues"]) -> CheckResult:
    x = np.linspace(-0.95, 0.95, 39)
    worst = 0.0
    for N, al, be in ((2, 1, 3), (0, 0, 0), (3, 2, 5), (5, 1, 2), (6, 0, 4)):
        ref = rodrigues_jacobi(N, al, be, x)
        worst = max(worst, float(np.max(np.abs(jacobi_poly(N, al, be, x) - ref) / np.maximum(1.0, np.abs(ref)))))
    return _result("rodrigues", worst, tol)


# -- kernel and spherical functions ---------------------------------------------------

def _random_ball_point(n: int, rng: np.random.Generator, radius: float = 0.95) -> np.ndarray:
    v = rng.standard_normal((n, 4))
    return v / np.linalg.norm(v) * radius * rng.uniform() ** (1 / (4 * n))


def _random_sphere_point(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal((n, 4))
    return v / np.linalg.norm(v)


def check_kernel_invariance(n: int, tol: float = DEFAULT_TOLERANCES["kernel_invariance"],
                            samples: int = 100) -> CheckResult:
    rng = _rng(4)
    worst = 0.0
    for k in range(samples):
        params = SpectralParams.from_i_lambda(n, k % 3, complex(rng.uniform(0.2, 3), rng.uniform(-2, 2)))
        A, D = random_sp(n, rng), random_unit_quaternion(rng)
        x, w = _random_ball_point(n, rng), _random_sphere_point(n, rng)
        before = poisson_kernel(params, x, w)
        after = poisson_kernel(params, act_k(A, D, x), act_k(A, D, w))
        worst = max(worst, abs(after - before) / (1.0 + abs(before)))
    return _result("kernel_invariance", worst, tol)


def check_elementary(ns=(2,), tol: float = DEFAULT_TOLERANCES["elementary"], grid_size=None) -> CheckResult:
    worst = 0.0
    for n in ns:
        grid = zonal_grid(n, grid_size)
        for tl in (0, 1, 2):
            for il in (1.0, 1.5 + 0.5j):
                params = SpectralParams.from_i_lambda(n, tl, il)
                for r in R_PROFILE:
                    quad = poisson_quadrature(params, lambda xi, phi: 1.0, r, grid)
                    closed = elementary_spherical(params, r)
                    worst = max(worst, abs(quad / closed - 1.0))
    return _result("elementary", worst, tol, {"c_n": {str(n): zonal_grid(n, grid_size).c_n for n in ns}})


def _ratio_spread(ratios) -> tuple[float, complex]:
    ratios = np.asarray(ratios, dtype=complex)
    mean = complex(np.mean(ratios))
    return float(np.std(ratios) / abs(mean)), mean


def check_scalarity(n: int, tol: float = DEFAULT_TOLERANCES["scalarity"], grid_size=None,
                    i_lambda: complex = 1.5 + 0.5j, rotated: bool = True) -> CheckResult:
    """Quadrature r-profiles of P phi_{p,q} against the closed form, for both radial exponents.

    With ``rotated`` the transform is also evaluated at r u for several boundary
    points u, where it must equal the same scalar times phi_{p,q}(u).
    """
    grid = zonal_grid(n, grid_size)
    spread = {"q": 0.0, "p": 0.0}
    constants = {}
    for kt in SCALARITY_KTYPES:
        for tl in (0, 1, 2):
            params = SpectralParams.from_i_lambda(n, tl, i_lambda)
            quad = [poisson_quadrature(params, ktype_zonal(kt, n), r, grid) for r in R_PROFILE]
            for expo in ("q", "p"):
                closed = [generalized_spherical(params, kt, r, expo) for r in R_PROFILE]
                sp, mean = _ratio_spread([a / b for a, b in zip(quad, closed)])
                spread[expo] = max(spread[expo], sp)
                if expo == "q":
                    constants[f"l={tl}/2,(p,q)=({kt.p},{kt.q})"] = [mean.real, mean.imag]
    winner = min(spread, key=spread.get)
    point_spread = 0.0
    if rotated:
        params = SpectralParams.from_i_lambda(n, 1, i_lambda)
        for kt in (KTypeIndex(1, 1), KTypeIndex(2, 2), KTypeIndex(1, 3)):
            # avoid the zeros of U_p(cos psi)
            ratios = [poisson_quadrature_at(params, kt, 0.6, psi) / zonal_harmonic(kt, n, BoundaryPoint(0.0, psi))
                      for psi in (0.0, 0.3, 0.7, 1.2, 2.0)]
            point_spread = max(point_spread, _ratio_spread(ratios)[0])
    details = {"radial_exponent": winner, "spread_q": spread["q"], "spread_p": spread["p"],
               "point_spread": point_spread, "proportionality_constants": constants}
    residual = max(spread[winner], point_spread)
    return _result("scalarity", residual, tol, details, passed=residual <= tol and winner == "q")


def check_limit(n: int, tol: float = DEFAULT_TOLERANCES["limit"]) -> CheckResult:
    """Extrapolated r -> 1 limits of the scaled Phi_{lam,l,p,q} against C_l(lam)."""
    worst_c, worst_pq = 0.0, 0.0
    for il in LIMIT_I_LAMBDAS:
        for tl in (0, 1, 2):
            params = SpectralParams.from_i_lambda(n, tl, il)
            C = c_constant(params)
            lims = [spherical_limit(params, kt).value for kt in LIMIT_KTYPES]
            worst_c = max(worst_c, max(abs(v / C - 1.0) for v in lims))
            worst_pq = max(worst_pq, max(abs(u / v - 1.0) for u in lims for v in lims))
    ext, closed = limit_law_check(3.5, 1.5, 4, 2, 0)
    law = abs(ext / closed - 1.0)
    details = {"constant_error": worst_c, "ktype_spread": worst_pq, "limit_law_error": law}
    return _result("limit", max(worst_c, worst_pq, law), tol, details)


def check_remark54(n: int, tol: float = DEFAULT_TOLERANCES["remark54"], collapse_tol: float = 1e-9) -> CheckResult:
    """Phi_{lam,l,0,0} / Phi_{lam,l} is constant in r; for l = 0 the bracket is a single 2F1."""
    spread = 0.0
    ratios = {}
    for tl in (0, 1, 2):
        for il in (1.0, 1.5 + 0.5j):
            params = SpectralParams.from_i_lambda(n, tl, il)
            sp, mean = _ratio_spread([generalized_spherical(params, KTypeIndex(0, 0), r) / elementary_spherical(params, r)
                                      for r in R_PROFILE])
            spread = max(spread, sp)
            ratios[f"l={tl}/2,i_lambda={il}"] = [mean.real, mean.imag]
    collapse = 0.0
    for il in (1.0, 1.5 + 0.5j, 2.5):
        params = SpectralParams.from_i_lambda(n, 0, il)
        for kt in ktype_enumerate(4):
            for r in R_PROFILE:
                full = generalized_terms(params, kt, r).bracket
                collapse = max(collapse, abs(full - l0_collapsed_bracket(params, kt, r)) / max(1.0, abs(full)))
    details = {"ratio_spread": spread, "collapse_error": collapse, "ratios": ratios}
    return _result("remark54", spread, tol, details, passed=spread <= tol and collapse <= collapse_tol)


# -- transform-level statements -----------------------------------------------------------

def random_kfinite(rng: np.random.Generator, max_terms: int = 4, max_degree: int = 3) -> KFiniteFunction:
    pool = ktype_enumerate(max_degree)
    count = int(rng.integers(1, max_terms + 1))
    picks = rng.choice(len(pool), size=count, replace=False)
    return KFiniteFunction.from_dict({pool[int(i)]: complex(rng.standard_normal(), rng.standard_normal())
                                      for i in sorted(picks)})


def check_sandwich(n: int, tol: float = DEFAULT_TOLERANCES["sandwich"], samples: int = 10,
                   grid_size: int = 64) -> CheckResult:
    """Lower and upper norm bounds for random K-finite data, and homogeneity under f -> 10 f."""
    rng = _rng(5)
    grid = zonal_grid(n, grid_size)
    worst = 0.0
    homog = 0.0
    all_ok = True
    lambdas = (1.0, 1.5 + 0.5j, 2.5)
    for k in range(samples):
        f = random_kfinite(rng)
        params = SpectralParams.from_i_lambda(n, k % 3, lambdas[k % 3])
        for p_exp in (2.0, 3.0):
            res = sandwich_check(params, f, p_exp, grid=grid, rtol=tol)
            all_ok &= res.lower_ok and res.upper_ok
            worst = max(worst, res.ratios[0] - 1.0, res.ratios[1] - 1.0)
            big = sandwich_check(params, f.scale(10.0), p_exp, grid=grid, rtol=tol)
            homog = max(homog, abs(big.hardy.value / (10 * res.hardy.value) - 1.0),
                        abs(big.f_norm / (10 * res.f_norm) - 1.0))
            all_ok &= big.lower_ok == res.lower_ok and big.upper_ok == res.upper_ok
    # the residual is how far either ratio pokes above 1 (it is negative when both bounds hold strictly)
    details = {"homogeneity_error": homog, "max_ratio_excess": worst, "normalization": 1.0}
    return _result("sandwich", max(worst, 0.0), tol, details, passed=all_ok and homog < 1e-12)


def check_inversion(n: int, tol: float = DEFAULT_TOLERANCES["inversion"], grid_size: int = 64) -> CheckResult:
    params = SpectralParams.from_i_lambda(n, 1, INVERSION_I_LAMBDA)
    f = KFiniteFunction.from_dict({KTypeIndex(0, 0): 1.0, KTypeIndex(1, 1): 0.5 - 0.25j, KTypeIndex(0, 2): 0.75j})
    grid = zonal_grid(n, grid_size)
    errs = [inversion_error(params, f, r, grid) for r in INVERSION_RADII]
    decreasing = all(b < a for a, b in zip(errs, errs[1:]))
    return _result("inversion", errs[-1], tol, {"errors": errs, "decreasing": decreasing},
                   passed=decreasing and errs[-1] < tol)


# -- driver -------------------------------------------------------------------------------

CHECK_ORDER = ("takahashi", "bateman", "contiguous", "rodrigues", "kernel_invariance", "elementary",
               "scalarity", "limit", "remark54", "sandwich", "inversion")


def run_checks(n: int, tolerances: dict | None = None, grid_size=None) -> list[CheckResult]:
    tols = dict(DEFAULT_TOLERANCES)
    tols.update(tolerances or {})
    calls = {
        "takahashi": lambda: check_takahashi(tols["takahashi"]),
        "bateman": lambda: check_bateman(tols["bateman"]),
        "contiguous": lambda: check_contiguous(tols["contiguous"]),
        "rodrigues": lambda: check_rodrigues(tols["rodrigues"]),
        "kernel_invariance": lambda: check_kernel_invariance(n, tols["kernel_invariance"]),
        "elementary": lambda: check_elementary((n,), tols["elementary"], grid_size),
        "scalarity": lambda: check_scalarity(n, tols["scalarity"], grid_size),
        "limit": lambda: check_limit(n, tols["limit"]),
        "remark54": lambda: check_remark54(n, tols["remark54"]),
        "sandwich": lambda: check_sandwich(n, tols["sandwich"]),
        "inversion": lambda: check_inversion(n, tols["inversion"]),
    }
    results = []
    for name in CHECK_ORDER:
        start = time.perf_counter()
        res = calls[name]()
        res.runtime_ms = (time.perf_counter() - start) * 1000.0
        results.append(res)
    return results


def build_report(n: int, results: list[CheckResult], grid_size=None, timings: bool = False) -> dict:
    by_name = {r.check_name: r for r in results}
    report = {
        "n": n,
        "grid_size": zonal_grid(n, grid_size).size,
        "c_n": zonal_grid(n, grid_size).c_n,
        "all_pass": all(r.passed for r in results),
        "checks": [r.to_dict(timings) for r in results],
    }
    if "contiguous" in by_name:
        report["contiguous_sign"] = by_name["contiguous"].details["sign"]
    if "scalarity" in by_name:
        d = by_name["scalarity"].details
        report["radial_exponent"] = d["radial_exponent"]
        report["proportionality_constants"] = d["proportionality_constants"]
    if "remark54" in by_name:
        report["remark54_ratios"] = by_name["remark54"].details["ratios"]
    return report
