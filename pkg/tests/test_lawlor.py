from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conecert import critical7, lawlor
from conecert.lawlor import JacobianBound, Status, Verdict


def rk4_vanishing_angle(k, J, alpha_sq, h=1e-5, theta0=1e-4):
    """Fixed-step RK4 on u = r^-k with the radicand evaluated directly.

    Returns the angle where u crosses zero, or None when the radicand
    turns negative first.
    """
    A = (2 * k + math.sqrt(4 * k * k - 16 * (k - 1 + alpha_sq))) / 8
    theta, u = theta0, (1 + A * theta0 ** 2) ** (-k)

    def f(th, u):
        rad = (math.cos(th) ** (k - 1) * J(math.tan(th))) ** 2 - u * u
        if rad < -1e-14:
            raise ArithmeticError
        return -k * math.sqrt(max(rad, 0.0))

    while theta < math.pi / 2:
        try:
            k1 = f(theta, u)
            k2 = f(theta + h / 2, u + h / 2 * k1)
            k3 = f(theta + h / 2, u + h / 2 * k2)
            k4 = f(theta + h, u + h * k3)
        except ArithmeticError:
            return None
        nu = u + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if nu <= 0:
            return theta + h * u / (u - nu)
        theta, u = theta + h, nu
    return None


def generic_F_direct(alpha, t, k):
    m = k - 1
    return (1 - alpha * t * math.sqrt((m - 1) / m)) * (1 + alpha * t / math.sqrt(m * (m - 1))) ** (m - 1)


@given(st.floats(0.5, 4.0), st.floats(0.0, 0.15), st.integers(4, 14))
def test_generic_F_formula(alpha, t, k):
    assert lawlor.generic_F(alpha, t, k - 1) == pytest.approx(generic_F_direct(alpha, t, k), rel=1e-12)


def test_generic_F_needs_two_dimensions():
    with pytest.raises(ValueError):
        lawlor.generic_F(1.0, 0.1, 1)


@given(st.integers(2, 10), st.data())
def test_two_eigen_L_at_zero(m, data):
    r = data.draw(st.integers(1, m - 1))
    assert lawlor.two_eigen_L(2.0, 0.0, m, r) == 1.0


@pytest.mark.parametrize("r", [0, 6])
def test_two_eigen_L_range(r):
    with pytest.raises(ValueError):
        lawlor.two_eigen_L(1.0, 0.1, 6, r)


@given(st.floats(0.5, 3.0), st.floats(0.01, 0.2))
def test_limit_is_large_m_limit(alpha, t):
    assert lawlor.generic_F(alpha, t, 10 ** 6) == pytest.approx(lawlor.limit_F(alpha, t), rel=1e-4)


@given(st.floats(0.5, 3.5), st.floats(0.01, 0.25), st.integers(3, 12))
def test_limit_lies_below_generic(alpha, t, m):
    if alpha * t * math.sqrt((m - 1) / m) < 1:
        assert lawlor.limit_F(alpha, t) <= lawlor.generic_F(alpha, t, m) + 1e-12


@given(st.integers(7, 40), st.floats(0.0, 20.0))
def test_startup_root(k, alpha_sq):
    A = lawlor.startup_coefficient(k, alpha_sq)
    if A is None:
        assert 4 * k * k < 16 * (k - 1 + alpha_sq)
    else:
        assert 4 * A * A - 2 * k * A + (k - 1 + alpha_sq) == pytest.approx(0.0, abs=1e-9 * k * k)


@pytest.mark.parametrize("k", [8, 9, 10, 11])
def test_theta1_against_rk4(k):
    alpha = math.sqrt(k - 1)
    ours = lawlor.theta1(k, alpha)
    ref = rk4_vanishing_angle(k, lambda t: lawlor.generic_F(alpha, t, k - 1), alpha * alpha)
    assert ours.vanishes and ref is not None
    assert ours.angle == pytest.approx(ref, abs=1e-5)


@pytest.mark.parametrize("name", ["E", "G"])
def test_case_angles_against_rk4(name):
    J = JacobianBound.case_exact(name, critical7.CLOSED_FORMS[name], critical7.ROOTS[name])
    ours = lawlor.integrate_vn(7, J)
    ref = rk4_vanishing_angle(7, critical7.CLOSED_FORMS[name], 6.0)
    assert ours.angle == pytest.approx(ref, abs=1e-5)


def test_F_case_agrees_no_vanishing():
    J = JacobianBound.case_exact("F", critical7.poly_F, critical7.ROOTS["F"])
    assert not lawlor.integrate_vn(7, J).vanishes
    assert rk4_vanishing_angle(7, critical7.poly_F, 6.0) is None


# values produced by the RK4 oracle above, frozen to 1e-3 degrees
THETA1 = {8: 15.809, 9: 12.975, 10: 11.164, 11: 9.845, 12: 8.825}
THETA2 = {8: 16.488, 9: 13.189, 10: 11.266, 11: 9.903, 12: 8.861}


@pytest.mark.parametrize("k", sorted(THETA1))
def test_frozen_table(k):
    a = math.sqrt(k - 1)
    assert lawlor.theta1(k, a).degrees == pytest.approx(THETA1[k], abs=1e-3)
    assert lawlor.theta2(k, a).degrees == pytest.approx(THETA2[k], abs=1e-3)


@pytest.mark.parametrize("k, alpha_sq", [(9, 8), (12, 11)])
def test_angle_ordering(k, alpha_sq):
    a = math.sqrt(alpha_sq)
    assert lawlor.theta1(k, a).angle <= lawlor.theta2(k, a).angle


def test_seven_dimensional_generic_bounds_do_not_vanish():
    a = math.sqrt(6)
    assert lawlor.theta1(7, a).status is Status.NO_VANISHING
    assert lawlor.theta2(7, a).status is Status.NO_VANISHING


def test_integrate_needs_k_at_least_three():
    with pytest.raises(ValueError):
        lawlor.integrate_vn(2, JacobianBound.limit(1.0))


def test_step_refinement_is_stable():
    J = JacobianBound.generic(math.sqrt(8), 9)
    base = lawlor.integrate_vn(9, J)
    fine = lawlor.integrate_vn(9, J, max_step=lawlor.MAX_STEP / 2, atol=lawlor.ATOL / 2, rtol=lawlor.RTOL / 2)
    assert abs(base.angle - fine.angle) < 1e-4


def test_result_dict():
    d = lawlor.theta1(9, math.sqrt(8)).to_dict()
    assert d["status"] == "Vanishes" and d["angleDeg"] == pytest.approx(12.9754, abs=1e-4)
    d = lawlor.theta1(7, math.sqrt(6)).to_dict()
    assert "maxThetaRad" in d


@pytest.mark.parametrize("k", range(13, 31))
def test_scaled_bound(k):
    tb = lawlor.theta2_scaled_bound(k, math.sqrt(k - 1))
    assert 0 < tb < 2 / k
    scaled, radius = lawlor.cosine_chain(k, 2)
    assert scaled < radius


def test_scaled_bound_needs_large_k():
    with pytest.raises(ValueError):
        lawlor.theta2_scaled_bound(12, 1.0)


def test_criterion():
    res = lawlor.theta1(9, math.sqrt(8))
    assert lawlor.criterion(res, math.pi / 2) is Verdict.MINIMIZING
    assert lawlor.criterion(res, 2 * res.angle) is Verdict.INCONCLUSIVE
    assert lawlor.criterion(res, 2 * res.angle + 1e-8) is Verdict.MINIMIZING
    assert lawlor.criterion(lawlor.theta1(7, math.sqrt(6)), math.pi) is Verdict.INCONCLUSIVE
    assert lawlor.criterion(0.1, math.pi / 2) is Verdict.MINIMIZING
    assert lawlor.criterion(float("inf"), math.pi / 2) is Verdict.INCONCLUSIVE


@given(st.floats(0.05, 0.3))
def test_trace_follows_solution(t):
    res = lawlor.theta1(9, math.sqrt(8))
    th, u = np.array(res.trace).T
    assert np.all(np.diff(u) <= 1e-12)
    assert u[0] <= 1.0
