from math import comb

import pytest
from hypothesis import given, strategies as st

from qloop.finite_reps import (MTupleBasis, check_relations_finite, gl_root_vector, vector_module, verma_module,
                               verma_operator)
from qloop.scalars import SpectralPoly, q_pow, qnum


@given(st.integers(1, 3), st.integers(0, 4))
def test_mtuple_basis_count(l, N):
    k = l * (l + 1) // 2
    assert len(MTupleBasis(l, N)) == comb(N + k, k)


def test_verma_examples():
    lam = (2, 1, 0)
    mod = verma_module(lam, 3)
    v0 = mod.basis.index[(0, 0, 0)]
    assert mod.qK(1, 1).entry(v0, v0) == SpectralPoly.const(q_pow(2))
    f1 = mod.F(1).column(v0)
    assert f1 == {mod.basis.index[(1, 0, 0)]: SpectralPoly.const(1)}
    one = verma_module((1, 0), 3)
    e1 = one.E(1).column(one.basis.index[(1,)])
    assert e1 == {one.basis.index[(0,)]: SpectralPoly.const(1)}
    with pytest.raises(ValueError):
        verma_module((1, 0.5), 3)


def test_verma_highest_vector():
    for lam in [(1, 0), (2, 1, 0), (3, 1, 0, 0)]:
        mod = verma_module(lam, 3)
        v0 = mod.basis.index[(0,) * len(mod.basis.labels[0])]
        assert all(not mod.E(i).column(v0) for i in range(1, mod.l + 1))
        assert all(mod.qK(i).entry(v0, v0) == SpectralPoly.const(q_pow(lam[i - 1]))
                   for i in range(1, mod.l + 2))


def test_vector_rep_examples():
    mod = vector_module(3)
    u = [mod.basis.index[lab] for lab in mod.basis.labels]
    assert mod.qK(1).entry(u[0], u[0]) == SpectralPoly.const(q_pow(1))
    res = (mod.E(2) @ mod.F(2) - mod.F(2) @ mod.E(2)).column(u[1])
    assert res == {u[1]: SpectralPoly.const(qnum(1))}
    e13 = gl_root_vector("E", 1, 3, mod)
    assert e13.nnz() == 1 and e13.column(u[2]) == {u[0]: SpectralPoly.const(1)}
    f14 = gl_root_vector("F", 1, 4, mod)
    assert list(f14.column(u[0])) == [u[3]]


def test_f13_on_verma_vacuum():
    mod = verma_module((2, 1, 0), 3)
    v0 = mod.basis.index[(0, 0, 0)]
    col = gl_root_vector("F", 1, 3, mod).column(v0)
    assert col == {mod.basis.index[(0, 1, 0)]: SpectralPoly.const(1)}


@pytest.mark.parametrize("lam", [(1, 0), (2, 1, 0), (2, 1, 0, 0)])
def test_top_root_vector_matches_closed_action(lam):
    l = len(lam) - 1
    rec = gl_root_vector("F", 1, l + 1, verma_module(lam, 4))
    closed = verma_operator("Ftop", lam, 4)
    for j in rec.safe_columns():
        assert rec.column(j) == closed.column(j)


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_vector_relations(l):
    rep = check_relations_finite(vector_module(l))
    assert rep.passed, rep.to_text()


@given(st.integers(1, 2), st.data())
def test_verma_relations(l, data):
    lam = tuple(data.draw(st.lists(st.integers(-2, 3), min_size=l + 1, max_size=l + 1)))
    rep = check_relations_finite(verma_module(lam, 3))
    assert rep.passed, rep.to_text()


def test_verma_relations_l2():
    assert check_relations_finite(verma_module((2, 1, 0), 4)).passed


def test_corrupted_e1_fails():
    rep = check_relations_finite(verma_module((2, 1, 0), 3).corrupted("E1"))
    assert not rep.passed
    assert any(c.name.startswith("[E1,F1]") or "E1" in c.name for c in rep.failures())
    assert all(c.witness for c in rep.failures())
