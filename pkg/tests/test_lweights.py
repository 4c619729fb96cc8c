import pytest
from hypothesis import given, strategies as st

from qloop.cartan import Weight, fundamental_weight
from qloop.finite_reps import verma_module
from qloop.loop_reps import evaluation_map, osc_rep, tensor_rep
from qloop.lweights import (LWeight, NotLWeightVector, RationalU, check_barred_symmetry, check_closed_vs_computed,
                            check_verma_vs_evaluation, closed_lweight, drinfeld_chi_series, highest_vector_check,
                            lweight_of_vector, lweight_product, phi_plus_series, spectral_x)
from qloop.operators import TruncationError
from qloop.scalars import Scalar, SpectralPoly, USeries, kappa, q_pow

X = spectral_x(1)


def _lin(c0, c1, power=1):
    return RationalU.linear(SpectralPoly.const(c0), c1, power)


def test_closed_examples():
    l = 3
    w = closed_lweight("theta", l, a=l + 1, x=X)
    assert w.lam == Weight.zero(l)
    assert all(p == RationalU.const(1) for p in w.psi[:-1])
    assert w.psi[-1] == _lin(1, -X * q_pow(1))
    w = closed_lweight("theta", l, a=1, x=X)
    assert w.lam == fundamental_weight(l, 1, -(l + 1))
    assert w.psi[0] == RationalU.const(q_pow(-l - 1)) * _lin(1, -X * q_pow(-l), -1)
    for l in (1, 2):
        w = closed_lweight("theta_bar", l, a=1, x=X)
        assert w.lam == Weight.zero(l)
        assert w.psi[0] == _lin(1, X * q_pow(1) * (-1) ** l)
    with pytest.raises(ValueError):
        closed_lweight("theta", 2, a=4, x=X)
    with pytest.raises(ValueError):
        closed_lweight("nope", 2)


def test_product_examples():
    l = 2
    w = closed_lweight("theta", l, a=2, x=X)
    assert lweight_product(closed_lweight("trivial", l), w).equals(w)
    xi = fundamental_weight(l, 1, 3)
    shifted = lweight_product(closed_lweight("onedim", l, xi=xi), w)
    assert shifted.psi[0].constant_term() == w.psi[0].constant_term() * SpectralPoly.const(q_pow(3))
    assert shifted.psi[1] == w.psi[1]
    a = X * q_pow(5)
    pp = lweight_product(closed_lweight("prefund_plus", l, i=2, x=a), closed_lweight("prefund_minus", l, i=2, x=a))
    assert pp.equals(closed_lweight("trivial", l))


def test_phi_plus_examples():
    l = 2
    g = osc_rep(l, l + 1, "theta", 4)
    v = g.basis.index[g.vacuum()]
    for i in (1, 2):
        phi = phi_plus_series(g, i, 2)
        assert phi.coeffs[0] == g.qh(i)
    assert phi_plus_series(g, 2, 1).coeffs[1].column(v) == {v: SpectralPoly.zeta(3, coeff=-q_pow(1))}
    assert phi_plus_series(g, 1, 1).coeffs[1].column(v) == {}
    with pytest.raises(ValueError):
        phi_plus_series(g, 3, 1)


def test_lweight_of_vector_examples():
    l = 2
    got = lweight_of_vector(osc_rep(l, l + 1, "theta", 5), None, 3)
    assert got.equals(closed_lweight("theta", l, a=l + 1, x=spectral_x(3)), 3)
    got = lweight_of_vector(osc_rep(l, 1, "theta", 5), None, 3)
    want = RationalU.const(q_pow(-l - 1)) * _lin(1, -spectral_x(3) * q_pow(-l), -1)
    assert got.psi[0] == want.expand(3)


def test_not_lweight_vector():
    g = osc_rep(2, 2, "theta", 3)
    with pytest.raises(NotLWeightVector) as info:
        lweight_of_vector(g, {(1, 0): 1, (0, 1): 1}, 1)
    assert info.value.witness


def test_truncation_is_reported():
    with pytest.raises(TruncationError):
        lweight_of_vector(osc_rep(2, 2, "theta", 2), None, 3)


def test_highest_vector_negative_control():
    g = osc_rep(2, 2, "theta", 4)
    assert highest_vector_check(g, None, 2).passed
    assert not highest_vector_check(g, (1, 0), 1).passed


@pytest.mark.parametrize("l", [1, 2, 3])
def test_closed_vs_computed(l):
    for kind in ("theta", "theta_bar"):
        for a in range(1, l + 2):
            rep = check_closed_vs_computed(l, a, kind, 5, 3)
            assert rep.passed, rep.to_text()


def test_closed_vs_computed_non_uniform_grading():
    for s in [(2, 1, 1), (0, 1, 3)]:
        for a in (1, 2, 3):
            assert check_closed_vs_computed(2, a, "theta", 5, 2, s=s).passed


def test_corrupted_e0_is_detected():
    rep = check_closed_vs_computed(2, 1, "theta", 5, 3, corrupt="e0")
    assert not rep.passed and rep.failures()[0].witness


@pytest.mark.parametrize("l", [1, 2, 3])
def test_barred_symmetry(l):
    assert check_barred_symmetry(l, None, 5, 3).passed


def test_barred_symmetry_negative_control():
    assert not check_barred_symmetry(2, None, 5, 2, corrupt="e0").passed


@pytest.mark.parametrize("lam", [(1, 0), (0, 2), (2, 1, 0), (1, 0, 0), (0, 1, 3)])
def test_verma_lweight_matches_evaluation_module(lam):
    assert check_verma_vs_evaluation(lam, 4, 2).passed


@given(st.integers(1, 3), st.data())
def test_constant_term_matches_weight(l, data):
    a = data.draw(st.integers(1, l + 1))
    kind = data.draw(st.sampled_from(["theta", "theta_bar"]))
    w = lweight_of_vector(osc_rep(l, a, kind, 3), None, 1)
    for i in range(1, l + 1):
        assert w.psi[i - 1].coeffs[0] == SpectralPoly.const(q_pow(w.lam.h(i)))


def test_tensor_multiplicativity_on_highest_vectors():
    m1, m2 = osc_rep(1, 1, "theta", 4), osc_rep(1, 2, "theta_bar", 4)
    t = tensor_rep(m1, m2, 4)
    got = lweight_of_vector(t, None, 2)
    w1 = lweight_of_vector(m1, None, 2)
    w2 = lweight_of_vector(m2, None, 2)
    embedded = [LWeight(w.lam, [USeries(c.embed(2, off) for c in p.coeffs) for p in w.psi])
                for w, off in ((w1, 0), (w2, 1))]
    assert got.equals(lweight_product(*embedded), 2)


def test_drinfeld_chi_commute():
    g = osc_rep(2, 2, "theta", 6)
    chi1 = drinfeld_chi_series(g, 1, 2)
    chi2 = drinfeld_chi_series(g, 2, 2)
    for x, y in ((chi1.coeffs[1], chi1.coeffs[2]), (chi1.coeffs[1], chi2.coeffs[2]), (chi2.coeffs[1], chi1.coeffs[1])):
        comm = x @ y - y @ x
        assert not comm.nonzero_on(comm.safe_columns())


def test_drinfeld_chi_linear_term_and_log():
    l = 2
    g = osc_rep(l, l + 1, "theta", 5)
    v = g.basis.index[g.vacuum()]
    chi = drinfeld_chi_series(g, l, 3)
    psi = closed_lweight("theta", l, a=l + 1, x=spectral_x(3)).psi[l - 1].expand(3)
    logs = psi.log1p() if psi.coeffs[0] == SpectralPoly.const(0) else (psi - USeries(
        [psi.coeffs[0]] + [SpectralPoly.const(0)] * 3)).log1p()
    for n in (1, 2, 3):
        sign = -1 if (l * n) % 2 else 1
        want = logs.coeffs[n] * SpectralPoly.const(kappa().inverse() * sign)
        assert chi.coeffs[n].column(v) == {v: want}


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 3))
def test_rational_expansion_is_multiplicative(e1, e2, order):
    r1 = _lin(1, X * q_pow(e1), -1)
    r2 = RationalU.const(q_pow(e2)) * _lin(1, -X * q_pow(e2), 1)
    assert (r1 * r2).expand(order) == r1.expand(order) * r2.expand(order)
    assert r1 * r1.inverse() == RationalU.const(1)
