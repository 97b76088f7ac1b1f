import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyppoisson.errors import DomainError
from hyppoisson.harmonics import (
    BoundaryPoint,
    KTypeIndex,
    ktype_enumerate,
    radial_profile,
    radial_profile_jacobi,
    zonal_harmonic,
    zonal_on_ball,
    zonal_profile,
)
from hyppoisson.kernels import Quaternion, hnorm
from hyppoisson.quadrature import zonal_grid, zonal_integral


@pytest.mark.parametrize("p,q", [(5, 2), (1, 2), (-1, 1), (0, 3)])
def test_ktype_validation(p, q):
    with pytest.raises(DomainError):
        KTypeIndex(p, q)


def test_ktype_enumerate():
    kts = ktype_enumerate(3)
    assert kts == sorted(kts)
    assert set(kts) == {KTypeIndex(0, 0), KTypeIndex(0, 2), KTypeIndex(1, 1), KTypeIndex(1, 3),
                        KTypeIndex(2, 2), KTypeIndex(3, 3)}
    assert KTypeIndex(1, 5).half_gap == 2


def test_boundary_point_embedding():
    pt = BoundaryPoint(0.4, 1.1, Quaternion(0, 0, 0.6, 0.8))
    w = pt.to_hvector(3)
    assert w.shape == (3, 4)
    assert hnorm(w) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        BoundaryPoint(0.4, 1.1, Quaternion(0.5, 0.5, 0.5, 0.5))
    with pytest.raises(DomainError):
        BoundaryPoint(2.0, 0.0)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("kt", ktype_enumerate(6))
def test_zonal_normalized_at_pole(n, kt):
    assert zonal_harmonic(kt, n, BoundaryPoint(0.0, 0.0)) == pytest.approx(1.0, abs=1e-13)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("kt", ktype_enumerate(7))
def test_hypergeometric_and_jacobi_profiles_agree(n, kt):
    xi = np.linspace(0, math.pi / 2, 31)
    a = radial_profile(kt, n, np.cos(xi), np.sin(xi))
    b = radial_profile_jacobi(kt, n, np.cos(xi))
    assert np.max(np.abs(a - b)) < 1e-12


def test_radial_profile_regular_at_equator():
    # the -tan^2 form is singular at xi = pi/2; the termwise form is not
    val = radial_profile(KTypeIndex(0, 2), 2, 0.0, 1.0)
    assert np.isfinite(val)


def test_zonal_ball_and_angles_agree():
    kt = KTypeIndex(1, 3)
    rho, theta = 0.35, 1.2
    assert zonal_on_ball(kt, 2, rho, theta) == pytest.approx(zonal_profile(kt, 2, math.acos(rho), theta))


@pytest.mark.parametrize("n", [2, 3])
def test_distinct_ktypes_are_orthogonal(n):
    grid = zonal_grid(n, 64)
    kts = ktype_enumerate(4)
    gram = np.empty((len(kts), len(kts)))
    for i, a in enumerate(kts):
        for j, b in enumerate(kts):
            gram[i, j] = zonal_integral(lambda r, t: zonal_on_ball(a, n, r, t) * zonal_on_ball(b, n, r, t),
                                        n, grid).real
    off = gram - np.diag(np.diag(gram))
    assert np.max(np.abs(off)) < 1e-13
    assert np.all(np.diag(gram) > 0)


@settings(max_examples=50, deadline=None)
@given(st.floats(0, math.pi / 2), st.floats(0, math.pi), st.integers(0, 4), st.integers(0, 3))
def test_zonal_bounded_by_one(xi, phi, p, half):
    kt = KTypeIndex(p, p + 2 * half)
    assert abs(zonal_harmonic(kt, 2, BoundaryPoint(xi, phi))) <= 1 + 1e-12
