import pytest
from hypothesis import given, strategies as st

from qloop.lax import (a_of, b_of, build_L_tilde, build_M_tilde, build_R_tilde, check_rll, check_rmm, check_ybe_R,
                       fock_basis, realize_osc, realize_osc_factorwise, seeded_points, ybe_degree_bounds)
from qloop.scalars import Scalar, q_pow


def test_r_matrix_functions():
    q = q_pow(1)
    z = Scalar.const(3)
    assert a_of(z) * (1 - q * q * z) == q * (1 - z)
    assert b_of(z) * (1 - q * q * z) == 1 - q * q


def test_lax_shapes():
    for l in (1, 2, 3):
        L, M = build_L_tilde(l), build_M_tilde(l)
        assert L.size == M.size == l + 1
        assert L.algebra == "osc" and M.algebra == "gl"
        assert build_R_tilde(l).size == l + 1


def test_printed_lax_differs_only_where_corrected():
    L, P = build_L_tilde(3), build_L_tilde(3, printed=True)
    changed = [(i, j) for i in range(1, 5) for j in range(1, 5) if L.entry(i, j) != P.entry(i, j)]
    assert changed
    assert all(j == 4 or 1 < i - j < 3 for i, j in changed)


@pytest.mark.parametrize("l,chis", [(1, "+"), (2, "+-"), (3, "-+-")])
def test_realizations_agree(l, chis):
    L = build_L_tilde(l)
    basis = fock_basis(l, 4)
    A = realize_osc(L, chis, basis)
    B = realize_osc_factorwise(L, chis, basis)
    for key in A:
        a, b = A[key], B[key]
        cols = set(a.safe_columns()) & set(b.safe_columns())
        assert all(a.column(j) == b.column(j) for j in cols)


@given(st.integers(1, 40), st.integers(0, 2 ** 32))
def test_seeded_points_deterministic(count, seed):
    pts = seeded_points(count, seed)
    assert pts == seeded_points(count, seed)
    assert len(pts) == count
    assert all(t not in (0, 1, -1) and w != 0 for t, w, *_ in pts)


@pytest.mark.parametrize("l,s", [(1, None), (2, None), (2, (2, 1, 0)), (3, None)])
def test_ybe(l, s):
    rep = check_ybe_R(l, s, points=20, seed=3)
    assert rep.passed, rep.to_text()
    grid = next(c for c in rep.checks if c.name == "grid certification")
    bounds = ybe_degree_bounds(build_R_tilde(l, s))
    assert all(n > bounds[k] for k, n in zip(("t", "w1", "w2"), grid.detail["grid"]))


def test_ybe_negative_control():
    rep = check_ybe_R(2, points=5, corrupt="a")
    assert not rep.passed
    assert all(c.witness for c in rep.failures())


@pytest.mark.parametrize("l", [1, 2])
def test_rll(l):
    rep = check_rll(l, N=5, points=10)
    assert rep.passed, rep.to_text()


def test_rll_non_uniform_and_mixed_chis():
    assert check_rll(2, s=(2, 1, 1), N=5, points=3).passed
    assert check_rll(2, N=6, points=3, chis="-+").passed


def test_rll_printed_entries_fail():
    for l in (1, 2):
        assert not check_rll(l, N=5, points=3, printed=True).passed


def test_rll_literal_leg_placement_fails():
    rep = check_rll(2, N=5, points=3, r_legs="12")
    assert not rep.passed


def test_rll_negative_control():
    rep = check_rll(1, N=5, points=3, corrupt="L21")
    assert not rep.passed
    assert all(c.witness for c in rep.failures())


@pytest.mark.parametrize("l,lam", [(1, (1, 0)), (2, (0, 0, 0)), (2, (1, 0, 0))])
def test_rmm_on_verma(l, lam):
    assert check_rmm(l, lam, N=4 if l == 1 else 5).passed


def test_render():
    L = build_L_tilde(1)
    out = L.render()
    assert out and all(isinstance(t, str) for v in out.values() for t in v)
    assert build_R_tilde(1).render()
