from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qloop.cartan import positive_pairs
from qloop.finite_reps import vector_module, verma_module
from qloop.loop_reps import (OscMonomial, check_relations_borel, chi_pattern, evaluation_map, jimbo_map, osc_rep,
                             rho_table, sigma_power, tau, tensor_rep, twist)
from qloop.loop_reps import twisted_table
from qloop.operators import GradedOperator
from qloop.scalars import Scalar, SpectralPoly, kappa, q_pow

ONE = Scalar.const(1)


def _unit(l, k):
    return tuple(1 if x == k else 0 for x in range(1, l + 1))


def _vec(l, **coeffs):
    out = [0] * l
    for name, c in coeffs.items():
        out[int(name[1:]) - 1] += c
    return tuple(out)


def _lin(l, pairs):
    out = [0] * l
    for k, c in pairs:
        out[k - 1] += c
    return tuple(out)


def _e_middle(l, k):
    """``- b_k b^dag_{k+1} q^{N_k - N_{k+1} - 1}``."""
    return OscMonomial(-ONE, (("b", k), ("bd", k + 1), ("qN", _lin(l, [(k, 1), (k + 1, -1)]), -1)))


def _e_low(l):
    return OscMonomial(-kappa().inverse(), (("b", l), ("qN", _unit(l, l), 0)))


def _e_raise(l):
    return OscMonomial(ONE, (("bd", 1), ("qN", _lin(l, [(j, 1) for j in range(2, l + 1)]), 0)))


def _h_plus(l):
    return _lin(l, [(1, 2)] + [(j, 1) for j in range(2, l + 1)])


def _h_minus(l):
    return _lin(l, [(l, -2)] + [(j, -1) for j in range(1, l)])


def explicit_rho(l, a):
    """Images of ``rho_a`` transcribed from the closed formulas (indices mod l+1)."""
    n = l + 1
    e, h = {}, {}
    for i in range(a + 1, l + a):
        k = i - a
        e[i % n] = _e_middle(l, k)
        h[i % n] = _lin(l, [(k + 1, 1), (k, -1)])
    e[(a - 1) % n], h[(a - 1) % n] = _e_low(l), _h_minus(l)
    e[a % n], h[a % n] = _e_raise(l), _h_plus(l)
    return e, h


def explicit_rho_bar(l, a):
    n = l + 1
    e, h = {}, {}
    for i in range(0, a - 1):
        if a - i <= l:
            e[i] = _e_middle(l, a - i - 1)
            h[i] = _lin(l, [(a - i, 1), (a - i - 1, -1)])
    for i in range(a + 1, l + 1):
        e[i] = _e_middle(l, l + a - i)
        h[i] = _lin(l, [(l + a - i + 1, 1), (l + a - i, -1)])
    e[(a - 1) % n], h[(a - 1) % n] = _e_raise(l), _h_plus(l)
    e[a % n], h[a % n] = _e_low(l), _h_minus(l)
    return e, h


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_twisted_tables_match_closed_formulas(l):
    for a in range(1, l + 2):
        for kind, oracle in (("theta", explicit_rho), ("theta_bar", explicit_rho_bar)):
            table = twisted_table(l, a, kind)
            e, h = oracle(l, a)
            assert sorted(e) == list(range(l + 1)) and sorted(h) == list(range(l + 1))
            for i in range(l + 1):
                assert table.e[i] == e[i], (kind, a, i)
                assert tuple(table.h[i]) == h[i], (kind, a, i)


@given(st.integers(1, 5), st.integers(0, 6))
def test_twist_orders(l, k):
    base = rho_table(l)
    full = twist(base, *([sigma_power(l, 1)] * (l + 1)))
    assert full.e == base.e and full.h == base.h
    assert twist(base, tau(l), tau(l)).e == base.e
    back = twist(twist(base, sigma_power(l, k)), sigma_power(l, -k))
    assert back.e == base.e


@pytest.mark.parametrize("l", [1, 2, 3])
def test_barred_tables_are_flipped_plain_tables(l):
    for a in range(1, l + 2):
        bar = twisted_table(l, a, "theta_bar")
        plain = twisted_table(l, l - a + 2, "theta")
        for i in range(l + 1):
            j = (l - i + 1) % (l + 1)
            assert bar.e[i] == plain.e[j]
            assert bar.h[i] == plain.h[j]


def test_chi_pattern():
    assert chi_pattern(3, 1, "theta") == "---"
    assert chi_pattern(3, 4, "theta") == "+++"
    assert chi_pattern(3, 2, "theta_bar") == "-++"
    with pytest.raises(ValueError):
        chi_pattern(3, 5, "theta")


def test_jimbo_map():
    assert jimbo_map("e2", 3) == "E_(2,3)"
    assert jimbo_map("f1", 3) == "F_(1,2)"
    assert jimbo_map("e0", 2) == "F_(1,3) q^(K_1+K_3)"
    assert jimbo_map("qh0", 2) == "q^(K_3-K_1)"


def test_e0_on_verma():
    lam = (2, 1, 0)
    g = evaluation_map(verma_module(lam, 4))
    pos = {p: k for k, p in enumerate(positive_pairs(2))}
    for lab in [(0, 0, 0), (1, 0, 2), (0, 1, 1), (2, 0, 1)]:
        got = g.e(0).apply_label(lab)
        target = list(lab)
        target[pos[(1, 3)]] += 1
        expo = lam[0] + lam[2] + lab[pos[(2, 3)]]
        assert got == {tuple(target): SpectralPoly.zeta(1, coeff=q_pow(expo))}


def test_f0_on_verma_not_provided():
    with pytest.raises(ValueError):
        evaluation_map(verma_module((1, 0), 2), full=True)


@pytest.mark.parametrize("l,a,kind", [(1, 1, "theta"), (2, 3, "theta"), (3, 2, "theta_bar"), (2, 1, "theta_bar")])
def test_loop_central_element(l, a, kind):
    g = osc_rep(l, a, kind, 3)
    for nu in (1, Fraction(1, 2)):
        prod = GradedOperator.identity(g.basis)
        for i in range(l + 1):
            prod = prod @ g.qh(i, nu)
        assert prod == GradedOperator.identity(g.basis)


def test_osc_rep_examples():
    l = 3
    g = osc_rep(l, l + 1, "theta", 4)
    assert all(g.h_exponent(i, g.vacuum()) == 0 for i in range(l + 1))
    assert g.e(0).apply_label(g.vacuum()) == {(1, 0, 0): SpectralPoly.zeta(1)}
    g = osc_rep(1, 1, "theta", 4)
    assert [g.h_exponent(0, (m,)) for m in range(4)] == [2 * (m + 1) for m in range(4)]


@pytest.mark.parametrize("s", [(1, 1, 1), (2, 1, 0), (0, 3, 1)])
def test_spectral_grading(s):
    for a in (1, 2, 3):
        g = osc_rep(2, a, "theta", 3, s)
        for i in range(3):
            for col in g.e(i).cols.values():
                for v in col.values():
                    assert v.exponents() == [(s[i],)]


def test_tensor_examples():
    m1, m2 = osc_rep(2, 1, "theta", 3), osc_rep(2, 3, "theta", 3)
    t = tensor_rep(m1, m2, 3)
    v = t.vacuum()
    for i in range(3):
        assert t.h_exponent(i, v) == m1.h_exponent(i, m1.vacuum()) + m2.h_exponent(i, m2.vacuum())
    for i in range(3):
        got = t.e(i).apply_label(v)
        want = {}
        for lab, c in m1.e(i).apply_label(m1.vacuum()).items():
            want[lab + m2.vacuum()] = c.embed(2, 0)
        hq = q_pow(m1.h_exponent(i, m1.vacuum()))
        for lab, c in m2.e(i).apply_label(m2.vacuum()).items():
            want[m1.vacuum() + lab] = c.embed(2, 1) * hq
        assert got == want


def test_tensor_associative():
    ms = [osc_rep(1, 1, "theta", 2), osc_rep(1, 2, "theta", 2), osc_rep(1, 2, "theta_bar", 2)]
    left = tensor_rep(tensor_rep(ms[0], ms[1], 2), ms[2], 2)
    right = tensor_rep(ms[0], tensor_rep(ms[1], ms[2], 2), 2)
    assert left.basis.labels == right.basis.labels
    for i in range(2):
        assert left.e(i).to_dump() == right.e(i).to_dump()
    with pytest.raises(ValueError):
        tensor_rep(osc_rep(1, 1), osc_rep(2, 1))


@pytest.mark.parametrize("l", [1, 2, 3])
def test_borel_relations_oscillators(l):
    for kind in ("theta", "theta_bar"):
        for a in range(1, l + 2):
            rep = check_relations_borel(osc_rep(l, a, kind, 4))
            assert rep.passed, rep.to_text()


def test_borel_relations_non_uniform_grading():
    assert check_relations_borel(osc_rep(2, 2, "theta", 4, (2, 1, 1))).passed


def test_quartic_serre_present_for_l1():
    rep = check_relations_borel(osc_rep(1, 1, "theta", 5))
    assert any(c.name == "serre e0^3 e1" for c in rep.checks)
    assert rep.passed


@pytest.mark.parametrize("lam", [(1, 0), (2, 1, 0)])
def test_borel_relations_evaluation(lam):
    assert check_relations_borel(evaluation_map(verma_module(lam, 4))).passed


def test_vector_evaluation_is_a_loop_module():
    g = evaluation_map(vector_module(2), full=True)
    assert g.algebra == "loop"
    assert check_relations_borel(g).passed


def test_corrupted_rho_fails_serre():
    for l in (1, 2, 3):
        rep = check_relations_borel(osc_rep(l, 1, "theta", 4, corrupt="rho"))
        assert not rep.passed
        assert any("serre" in c.name for c in rep.failures())
