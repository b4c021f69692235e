import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mtdecoherence.errors import DomainError, SingularityError
from mtdecoherence.interactions import (
    CoulombSystem,
    DipoleSystem,
    KinkProfile,
    coulomb_delta_v,
    dipole_delta_v,
    geometric_factor,
    kink_moment,
)
from mtdecoherence.quantities import CHARGE, DIPOLE_MOMENT, ENERGY, LENGTH, qty

from conftest import D_MT, E, K


def test_kink_profile():
    prof = KinkProfile(p0=1e-27, z0=0.0)
    assert kink_moment(prof, 5e-9) == 1e-27
    assert kink_moment(prof, -5e-9) == -1e-27
    assert kink_moment(prof, 0.0) == 0.0


@given(st.floats(-1e-6, 1e-6), st.floats(1e-12, 1e-6))
def test_kink_odd_about_center(z0, u):
    prof = KinkProfile(p0=2e-27, z0=z0)
    assert kink_moment(prof, z0 + u) == -kink_moment(prof, z0 - u)


def _ring(x1=D_MT, y1=0.0, d=D_MT):
    return CoulombSystem(q1=1000 * E, q2=E, d=d, x1=x1, y1=y1, N=1000)


def test_zero_separation_gives_zero():
    sys0 = _ring(x1=0.0, y1=0.0)
    x2 = np.linspace(-3 * D_MT, 3 * D_MT, 11)
    assert np.all(coulomb_delta_v(sys0, x2, "expanded") == 0)
    assert np.all(coulomb_delta_v(sys0, x2, "exact") == 0)


def test_expanded_point_value():
    sys1 = CoulombSystem(q1=1.6e-16, q2=1.6e-19, d=2.4e-8, x1=2.4e-8, y1=0.0)
    hand = K * 1.6e-16 * 1.6e-19 * (2.4e-8 * 2.4e-8) / (2 * 2.4e-8**2) ** 1.5
    v = coulomb_delta_v(sys1, 2.4e-8, "expanded")
    assert v == pytest.approx(hand, rel=1e-13)
    assert v == pytest.approx(3.3941e-18, rel=1e-4)


def test_exact_matches_expanded_for_small_displacement():
    d = D_MT
    sys1 = _ring(x1=1e-4 * d, y1=0.0, d=d)
    x2 = np.linspace(-d, d, 401)
    ex = coulomb_delta_v(sys1, x2, "exact")
    ap = coulomb_delta_v(sys1, x2, "expanded")
    # sup-norm: the first-order term vanishes at x2 = 0, the second-order one does not
    rel = np.max(np.abs(ex - ap)) / np.max(np.abs(ap))
    assert rel < 1e-3


def test_expanded_converges_to_exact():
    d = D_MT
    x2 = np.linspace(-d, d, 50)
    errs = []
    for ratio in (1e-1, 1e-2, 1e-3, 1e-4):
        sys1 = _ring(x1=ratio * d, y1=0.5 * ratio * d, d=d)
        ex = coulomb_delta_v(sys1, x2, "exact")
        ap = coulomb_delta_v(sys1, x2, "expanded")
        errs.append(np.max(np.abs(ex - ap)) / np.max(np.abs(ap)))
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_exact_singularity():
    sys1 = _ring(x1=1e-9, y1=D_MT)
    with pytest.raises(SingularityError):
        coulomb_delta_v(sys1, 1e-9, "exact")


@given(st.floats(-10, 10), st.floats(-5e-8, 5e-8))
def test_expanded_linear_in_displacement(a, x2):
    base = _ring(x1=3e-9, y1=-2e-9)
    scaled = _ring(x1=a * 3e-9, y1=a * -2e-9)
    v0 = coulomb_delta_v(base, x2)
    assert coulomb_delta_v(scaled, x2) == pytest.approx(a * v0, rel=1e-12, abs=1e-40)


def test_dipole_zero_cases():
    x2 = np.linspace(-5e-8, 5e-8, 9)
    no_p = DipoleSystem(p=0.0, alpha=0.3, q=E, d=D_MT, s=D_MT)
    no_s = DipoleSystem(p=1e-27, alpha=0.3, q=E, d=D_MT, s=0.0)
    assert np.all(dipole_delta_v(no_p, x2) == 0)
    assert np.all(dipole_delta_v(no_s, x2) == 0)


def test_dipole_point_value():
    sysd = DipoleSystem(p=1e-27, alpha=0.0, q=1.6e-19, d=2.4e-8, s=2.4e-8)
    # 3 K q s p x2 / (2 d^2)^2 at x2 = d
    hand = 3 * 9e9 * 1.6e-19 * 2.4e-8 * 1e-27 * 2.4e-8 / (2 * 2.4e-8**2) ** 2
    assert dipole_delta_v(sysd, 2.4e-8) == pytest.approx(hand, rel=1e-13)
    assert hand == pytest.approx(1.875e-21, rel=1e-12)


@given(st.floats(0, 1e-7))
def test_dipole_symmetries(x2):
    along = DipoleSystem(p=1e-27, alpha=0.0, q=E, d=D_MT, s=D_MT)
    across = DipoleSystem(p=1e-27, alpha=math.pi / 2, q=E, d=D_MT, s=D_MT)
    assert dipole_delta_v(along, -x2) == pytest.approx(-dipole_delta_v(along, x2), rel=1e-12, abs=1e-40)
    assert dipole_delta_v(across, -x2) == pytest.approx(dipole_delta_v(across, x2), rel=1e-12)


@given(st.floats(-1.5, 1.5))
def test_geometric_factor(alpha):
    assert geometric_factor(alpha) * math.cos(alpha) == pytest.approx(1.0, rel=1e-12)


def test_geometric_factor_guard():
    with pytest.raises(SingularityError):
        geometric_factor(math.pi / 2)


def test_system_validation():
    with pytest.raises(DomainError):
        CoulombSystem(q1=E, q2=E, d=0.0, x1=1e-9)
    with pytest.raises(DomainError):
        DipoleSystem(p=-1.0, alpha=0.0, q=E, d=1e-8, s=1e-8)


def test_potentials_have_energy_dimension():
    ring = CoulombSystem(
        q1=qty(1000 * E, CHARGE), q2=qty(E, CHARGE), d=qty(D_MT, LENGTH), x1=qty(D_MT, LENGTH), y1=qty(1e-9, LENGTH)
    )
    x2 = qty(1e-8, LENGTH)
    for mode in ("exact", "expanded"):
        v = coulomb_delta_v(ring, x2, mode)
        assert v.dim == ENERGY
        assert v.value == pytest.approx(coulomb_delta_v(_ring(y1=1e-9), 1e-8, mode), rel=1e-12)
    dip = DipoleSystem(
        p=qty(1e-27, DIPOLE_MOMENT), alpha=0.4, q=qty(E, CHARGE), d=qty(D_MT, LENGTH), s=qty(D_MT, LENGTH)
    )
    assert dipole_delta_v(dip, x2).dim == ENERGY
