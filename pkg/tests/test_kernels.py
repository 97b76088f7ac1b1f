import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyppoisson.errors import DomainError, ZeroQuaternion
from hyppoisson.kernels import (
    Quaternion,
    SpectralParams,
    act_k,
    chi_l,
    hnorm,
    kernel_from_pairing,
    matvec,
    pairing,
    poisson_kernel,
    qconj,
    qmul,
    radial_point,
    random_sp,
    random_unit_quaternion,
)

quat = st.tuples(*[st.floats(-3, 3, allow_nan=False)] * 4).map(lambda t: Quaternion(*t))


def test_hamilton_units():
    i, j, k = Quaternion(0, 1), Quaternion(0, 0, 1), Quaternion(0, 0, 0, 1)
    assert i * j == k
    assert j * i == -k
    assert i * i == Quaternion(-1.0)


@settings(max_examples=100, deadline=None)
@given(quat, quat)
def test_norm_is_multiplicative(p, q):
    assert abs(p * q) == pytest.approx(abs(p) * abs(q), rel=1e-12, abs=1e-12)
    assert (p * q).conj().to_array() == pytest.approx((q.conj() * p.conj()).to_array(), abs=1e-12)


def test_quaternion_arithmetic():
    q = Quaternion(1, 2, 3, 4)
    assert q.norm2() == 30
    assert (q + 1) == Quaternion(2, 2, 3, 4)
    assert (1 - q) == Quaternion(0, -2, -3, -4)
    assert (q / 2) == Quaternion(0.5, 1, 1.5, 2)
    assert (2 * q) == q * 2


def test_pairing_is_conjugate_linear_in_first_slot():
    rng = np.random.default_rng(0)
    x, w = rng.standard_normal((3, 4)), rng.standard_normal((3, 4))
    a = rng.standard_normal(4)
    lhs = pairing(qmul(x, a[None, :]), w).to_array()
    rhs = qmul(qconj(a), pairing(x, w).to_array())
    assert lhs == pytest.approx(rhs, abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_random_sp_is_unitary(n):
    rng = np.random.default_rng(n)
    A = random_sp(n, rng)
    x = rng.standard_normal((n, 4))
    assert hnorm(matvec(A, x)) == pytest.approx(hnorm(x), rel=1e-12)
    y = rng.standard_normal((n, 4))
    assert pairing(matvec(A, x), matvec(A, y)).to_array() == pytest.approx(pairing(x, y).to_array(), abs=1e-12)


def test_k_action_preserves_pairing_up_to_conjugation():
    rng = np.random.default_rng(7)
    A, D = random_sp(3, rng), random_unit_quaternion(rng)
    x, w = rng.standard_normal((3, 4)), rng.standard_normal((3, 4))
    u = pairing(x, w)
    v = pairing(act_k(A, D, x), act_k(A, D, w))
    # <xD^-1, wD^-1> = D <x, w> D^-1: same real part and modulus
    assert v.real == pytest.approx(u.real, abs=1e-12)
    assert abs(v) == pytest.approx(abs(u), rel=1e-12)


def test_spectral_params_convention():
    p = SpectralParams(2, 1, complex(0.0, -1.0))
    assert p.i_lambda == pytest.approx(1.0)
    assert p.s == pytest.approx(3.0)
    assert p.rho == 5 and p.l == 0.5
    q = SpectralParams.from_i_lambda(3, 2, 1.5 + 0.5j)
    assert q.i_lambda == pytest.approx(1.5 + 0.5j)


@pytest.mark.parametrize("bad", [dict(n=1, twice_l=0, lam=1), dict(n=2, twice_l=-1, lam=1),
                                 dict(n=2, twice_l=0, lam=float("nan"))])
def test_spectral_params_validation(bad):
    with pytest.raises(DomainError):
        SpectralParams(**bad)


def test_require_asymptotic():
    with pytest.raises(DomainError):
        SpectralParams.from_i_lambda(2, 0, -0.5).require_asymptotic()


def test_chi_l():
    assert chi_l(0, Quaternion(0.3, 1, 2, 0)) == 1
    assert chi_l(3, Quaternion(2.0)) == 4
    t = 0.7
    q = Quaternion(math.cos(t), math.sin(t), 0, 0) * 3.0
    assert chi_l(2, q) == pytest.approx(math.sin(3 * t) / math.sin(t), rel=1e-13)
    with pytest.raises(ZeroQuaternion):
        chi_l(1, Quaternion(0.0))


def test_kernel_at_origin_is_constant():
    params = SpectralParams.from_i_lambda(2, 2, 1.3 + 0.2j)
    w = np.zeros((2, 4))
    w[1] = [0, 0.6, 0, 0.8]
    assert poisson_kernel(params, radial_point(2, 0.0), w) == pytest.approx(3.0)


def test_kernel_matches_pairing_form():
    rng = np.random.default_rng(3)
    params = SpectralParams.from_i_lambda(3, 1, 0.8 - 0.4j)
    x = rng.standard_normal((3, 4))
    x *= 0.7 / hnorm(x)
    w = rng.standard_normal((3, 4))
    w /= hnorm(w)
    u = pairing(x, w)
    direct = poisson_kernel(params, x, w)
    vec = kernel_from_pairing(params, 0.49, u.real, u.norm2())
    assert complex(vec) == pytest.approx(direct, rel=1e-13)


def test_kernel_domain_errors():
    params = SpectralParams.from_i_lambda(2, 0, 1.0)
    w = radial_point(2, 1.0)
    with pytest.raises(DomainError):
        poisson_kernel(params, radial_point(2, 1.0), w)
    with pytest.raises(DomainError):
        poisson_kernel(params, radial_point(2, 0.5), radial_point(2, 0.9))
    with pytest.raises(DomainError):
        poisson_kernel(params, np.zeros((3, 4)), w)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000))
def test_kernel_k_invariance(seed):
    rng = np.random.default_rng(seed)
    n = 2 + seed % 2
    params = SpectralParams.from_i_lambda(n, seed % 3, complex(rng.uniform(0.1, 3), rng.uniform(-2, 2)))
    A, D = random_sp(n, rng), random_unit_quaternion(rng)
    x = rng.standard_normal((n, 4))
    x *= rng.uniform(0, 0.95) / hnorm(x)
    w = rng.standard_normal((n, 4))
    w /= hnorm(w)
    before = poisson_kernel(params, x, w)
    after = poisson_kernel(params, act_k(A, D, x), act_k(A, D, w))
    assert abs(after - before) < 1e-11 * (1 + abs(before))
