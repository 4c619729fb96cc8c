import pytest
from hypothesis import given, strategies as st

from qloop.cartan import Weight, fundamental_weight
from qloop.funrel import (check_l1_coincidence, check_osc_prefund, check_reverse, check_tensor_computed,
                          check_tq_factorization, osc_prefund_rhs, rational_homogeneity_witness, reverse_rhs,
                          xi_reverse, xi_theta)
from qloop.lweights import LWeight, RationalU, check_closed_vs_computed, closed_lweight, spectral_x
from qloop.scalars import SpectralPoly, q_pow

X = spectral_x(1)


def _w(l, *pairs):
    out = Weight.zero(l)
    for i, c in pairs:
        out = out + fundamental_weight(l, i, c)
    return out


def _lin(c1, power):
    return RationalU.linear(SpectralPoly.const(1), c1, power)


def test_shift_weights():
    assert xi_theta(2, 1, "theta") == _w(2, (1, -3))
    assert xi_theta(2, 2, "theta_bar") == _w(2, (1, -2), (2, 1))
    assert xi_reverse(3, 2, "-", "theta") == _w(3, (1, -2), (2, -3))
    assert xi_reverse(3, 2, "+", "theta") == _w(3, (2, 1), (3, -2))
    assert xi_reverse(3, 2, "+", "theta_bar") == _w(3, (1, -2), (2, 1))
    assert xi_reverse(3, 2, "-", "theta_bar") == _w(3, (2, -3), (3, -2))


def test_osc_prefund_examples():
    l = 3
    rhs = osc_prefund_rhs(l, l + 1, "theta")
    assert rhs.psi[-1] == _lin(-X * q_pow(1), 1) and rhs.lam == Weight.zero(l)
    rhs = osc_prefund_rhs(2, 1, "theta")
    assert rhs.psi[0] == RationalU.const(q_pow(-3)) * _lin(-X * q_pow(-2), -1)
    rhs = osc_prefund_rhs(2, 2, "theta_bar")
    assert rhs.lam == _w(2, (1, -2), (2, 1))
    assert rhs.equals(closed_lweight("theta_bar", 2, a=2, x=X))


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_osc_prefund_all(l):
    for kind in ("theta", "theta_bar"):
        assert check_osc_prefund(l, None, kind).passed


def test_reverse_examples():
    _, rhs = reverse_rhs(1, 1, "-", "theta")
    assert rhs.psi[0] == RationalU.const(q_pow(-2)) * _lin(-X, -1)
    pts, _ = reverse_rhs(2, 1, "+", "theta")
    assert pts == [(2, 0, 1), (3, -2, 1)]
    pts, _ = reverse_rhs(2, 2, "-", "theta_bar")
    assert pts == [(3, 2, -1)]


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_reverse_all(l):
    for kind in ("theta", "theta_bar"):
        rep = check_reverse(l, None, None, kind)
        assert rep.passed, rep.to_text()
        assert len(rep.checks) == 2 * l


def test_reverse_non_uniform_grading():
    for kind in ("theta", "theta_bar"):
        assert check_reverse(2, None, None, kind, s=(2, 1, 1)).passed
        assert check_osc_prefund(2, None, kind, s=(0, 1, 3)).passed


def test_tq_l1_value():
    rep = check_tq_factorization((1, 0))
    assert rep.passed
    x = spectral_x(2)
    want = RationalU.const(q_pow(-2)) * _lin(-x, 1) * _lin(-x * q_pow(2), -1)
    for c in rep.checks:
        lhs = c.detail["lhs"]["psi"][0]
        assert lhs == want.render()


@pytest.mark.parametrize("l", [1, 2, 3])
def test_tq_grid(l):
    for lam in [(0,) * (l + 1), (1,) + (0,) * l, tuple(max(0, 2 - k) for k in range(l + 1))]:
        rep = check_tq_factorization(lam)
        assert rep.passed, rep.to_text()


@given(st.lists(st.integers(-3, 4), min_size=2, max_size=4))
def test_tq_any_integral_weight(lam):
    assert check_tq_factorization(lam).passed


def test_tq_trivial_weight_constants():
    rep = check_tq_factorization((0, 0, 0))
    assert rep.checks[0].detail["lhs"]["lambda_omega"] == ["-2", "-2"]


@pytest.mark.parametrize("l,N,n_max", [(1, 4, 2), (2, 3, 1)])
def test_tensor_computed(l, N, n_max):
    rep = check_tensor_computed(l, N, n_max)
    assert rep.passed, rep.to_text()


def test_tensor_single_factor_is_lweight_oracle():
    for a in (1, 2, 3):
        assert check_tensor_computed(2, 5, 3, factors=[a]).passed == check_closed_vs_computed(2, a, "theta", 5, 3).passed


def test_tensor_mixed_kinds():
    assert check_tensor_computed(1, 4, 2, kinds=["theta_bar", "theta"], factors=[1, 1]).passed


def test_l1_coincidence():
    assert check_l1_coincidence().passed


def test_homogeneity_witness():
    good = closed_lweight("theta", 2, a=2, x=spectral_x(3))
    assert rational_homogeneity_witness(good, 3) is None
    assert rational_homogeneity_witness(good, 2) is not None
    bad = LWeight(good.lam, [RationalU.linear(SpectralPoly.const(1), SpectralPoly.zeta(2), 1), good.psi[1]])
    assert rational_homogeneity_witness(bad, 3) is not None


@pytest.mark.parametrize("l", [1, 2, 3])
def test_shift_corruption_detected(l):
    for kind in ("theta", "theta_bar"):
        rep = check_osc_prefund(l, None, kind, corrupt="shift")
        assert all(not c.ok and c.witness for c in rep.checks)
        rep = check_reverse(l, None, None, kind, corrupt="shift")
        assert all(not c.ok and c.witness for c in rep.checks)
    assert not check_tq_factorization((1,) + (0,) * l, corrupt="shift").passed


def test_tensor_corruption_detected():
    assert not check_tensor_computed(1, 4, 2, corrupt="shift").passed


def test_reports_carry_both_sides():
    rep = check_reverse(2, 1, "+", "theta")
    d = rep.checks[0].detail
    assert set(d) >= {"lhs", "rhs", "points"}
