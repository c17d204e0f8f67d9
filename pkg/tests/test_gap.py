"""Gap certificates: construction, worked values, verification report."""

import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from holodom.errors import DomainError
from holodom.gap import construct_gap, hermite_interpolate, psi, verify_gap
from holodom.poly import Poly, RationalFn


def rational(num, den):
    return RationalFn(Poly(num), Poly(den))


def test_hermite_single_jet_is_taylor():
    p = hermite_interpolate([(1.0, [2.0, 3.0, 4.0])])
    # p(1) = 2, p'(1) = 3, p''(1)/2 = 4
    assert p.jet(1.0, 2) == pytest.approx([2.0, 3.0, 4.0])


def test_hermite_two_centers():
    p = hermite_interpolate([(0.0, [1.0, 1.0]), (1.0, [0.0])])
    assert p.degree <= 2
    assert p(0.0) == pytest.approx(1.0)
    assert p.deriv()(0.0) == pytest.approx(1.0)
    assert p(1.0) == pytest.approx(0.0, abs=1e-12)


def test_hermite_rejects_duplicate_centers():
    with pytest.raises(DomainError):
        hermite_interpolate([(1.0, [0.0]), (1.0, [1.0])])


def test_hermite_empty_is_zero():
    assert hermite_interpolate([]).is_zero


def test_gap_for_one_over_z():
    cert = construct_gap(rational([1.0], [0.0, 1.0]))
    assert cert.g1.is_zero
    # h = (q - e^0)/q1 = 0 identically
    for z in (0.5, 2.0 - 1.0j, -3.0):
        assert abs(cert.h(z)) < 1e-12
        assert cert.g_expr(z) == pytest.approx(z)


def test_gap_worked_two_pole_example():
    # s = z/(z^2 - 1): g1 interpolates Log z at +1 and -1
    cert = construct_gap(rational([0.0, 1.0], [-1.0, 0.0, 1.0]))
    want = Poly([0.5j * math.pi, -0.5j * math.pi])
    assert len(cert.g1.coeffs) == len(want.coeffs)
    for got, expect in zip(cert.g1.coeffs, want.coeffs):
        assert abs(got - expect) < 1e-10


def test_gap_entire_case():
    # s = z^2 has no poles: h = s - 1
    cert = construct_gap(rational([0.0, 0.0, 1.0], [1.0]))
    assert cert.g1.is_zero
    assert cert.pole_data == ()
    for z in (0.0, 1.0j, 2.5):
        assert cert.h(z) == pytest.approx(z * z - 1.0)


def test_gap_identity_holds_off_poles():
    # s - h = e^(g1)/q1 wherever everything is finite
    s = rational([1.0, 2.0], [-2.0, 0.0, 1.0])
    cert = construct_gap(s)
    for z in (0.3, -1.0 + 2.0j, 4.0):
        lhs = s(z) - cert.h(z)
        rhs = cmath.exp(cert.g1(z)) / s.den(z)
        assert lhs == pytest.approx(rhs, rel=1e-9)


def test_gap_multiple_pole_matches_log_jet():
    # double pole at 1: g1 must match Log q through first order there
    s = rational([3.0, 1.0], [1.0, -2.0, 1.0])
    cert = construct_gap(s)
    qjet = s.num.jet(1.0, 1)
    assert cert.g1(1.0) == pytest.approx(cmath.log(qjet[0]))
    assert cert.g1.deriv()(1.0) == pytest.approx(qjet[1] / qjet[0])


def test_verify_gap_report_fields_and_pass():
    cert = construct_gap(rational([0.0, 1.0], [-1.0, 0.0, 1.0]))
    rep = verify_gap(cert, n_samples=500, seed=3)
    assert rep.passed
    assert rep.min_difference > 0.0
    assert rep.jet_residual < 1e-8
    assert rep.consistency < 1e-6
    assert rep.samples == 500
    data = rep.to_json()
    assert set(data) >= {"min_difference", "jet_residual", "pole_circle_max",
                         "consistency", "passed", "samples"}


def test_verify_gap_min_difference_positive_despite_underflow():
    # far from the poles e^(g1) underflows below float resolution of s;
    # the reported minimum gap must stay strictly positive anyway
    cert = construct_gap(rational([1.0], [0.0, 0.0, 0.0, 1.0]))
    rep = verify_gap(cert, n_samples=2000, seed=11)
    assert rep.passed
    assert rep.min_difference > 0.0


def test_certificate_json_shape():
    cert = construct_gap(rational([1.0], [0.0, 1.0]))
    data = cert.to_json()
    assert data["g1"] == []
    assert data["s"]["num"] == [[1.0, 0.0]]
    assert data["pole_data"][0]["order"] == 1


def test_psi_at_zero_and_generic():
    assert psi(0.0, 1.0) == pytest.approx(1.0)
    assert psi(1.0, 1.0) == pytest.approx(math.e - 1.0)


def _psi_reference(t, w):
    acc, term = 0j, complex(w)
    for k in range(1, 16):
        acc += term
        term = term * t * w / (k + 1)
    return acc


@given(st.complex_numbers(max_magnitude=2e-4, allow_nan=False,
                          allow_infinity=False),
       st.complex_numbers(max_magnitude=2.0, allow_nan=False,
                          allow_infinity=False))
@settings(max_examples=100)
def test_psi_continuous_across_series_switch(t, w):
    assert cmath.isclose(psi(t, w), _psi_reference(t, w),
                         rel_tol=1e-9, abs_tol=1e-12)


@given(st.integers(1, 3).flatmap(lambda n: st.lists(
    st.complex_numbers(min_magnitude=0.2, max_magnitude=2.0,
                       allow_nan=False, allow_infinity=False),
    min_size=n, max_size=n)))
@settings(max_examples=40, deadline=None)
def test_gap_construction_separated_simple_poles(poles):
    for i, a in enumerate(poles):
        for b in poles[:i]:
            if abs(a - b) < 0.3:
                return  # want well-separated poles only
    s = RationalFn(Poly([1.0, 0.5]), Poly.from_roots(poles))
    cert = construct_gap(s)
    for pole in poles:
        # s - h = e^(g1)/q1 forces h finite with the right jet at each pole
        val = cmath.exp(cert.g1(pole))
        qv = s.num(pole)
        assert cmath.isclose(val, qv, rel_tol=1e-6)
