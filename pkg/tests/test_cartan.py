from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from qloop.cartan import (AffineRoot, RankConfig, Weight, cartan_matrices, fundamental_weight, normal_order_cmp,
                          positive_pairs, rho_pairing, root_pairing)


def test_cartan_examples():
    c, a, a_ext = cartan_matrices(1)
    assert c == [[1], [-1]]
    assert a_ext == [[2, -2], [-2, 2]]
    _, a, a_ext = cartan_matrices(2)
    assert a == [[2, -1], [-1, 2]]
    assert a_ext[0] == [2, -1, -1]


@given(st.integers(2, 7))
def test_extended_cartan_rows_sum_to_zero(l):
    _, a, a_ext = cartan_matrices(l)
    assert all(sum(row) == 0 for row in a_ext)
    assert all(a[i][j] == a[j][i] for i in range(l) for j in range(l))
    assert all(a[i][i] == 2 for i in range(l))


def test_pairing_examples():
    r = AffineRoot.plus(3, 1, 3)
    assert root_pairing(r, r) == 2
    d = AffineRoot.imag(3, 1, 1)
    assert root_pairing(d, r) == 0
    assert root_pairing(AffineRoot.simple(2, 1), AffineRoot.simple(2, 2)) == -1


def test_normal_order_examples():
    a12 = AffineRoot.plus(2, 1, 2, 0)
    assert normal_order_cmp(a12, AffineRoot.imag(2, 1, 1)) < 0
    assert normal_order_cmp(a12, AffineRoot.plus(2, 1, 2, 1)) < 0
    assert normal_order_cmp(AffineRoot.minus(2, 1, 2, 1), AffineRoot.minus(2, 1, 2, 0)) < 0
    assert normal_order_cmp(AffineRoot.imag(2, 1, 1), AffineRoot.imag(2, 2, 2)) == 0


def _real_roots(l, nmax=2):
    out = []
    for (i, j), n in product(positive_pairs(l), range(nmax + 1)):
        out.append(AffineRoot.plus(l, i, j, n))
        out.append(AffineRoot.minus(l, i, j, n))
    return out


@given(st.integers(1, 3), st.data())
def test_normal_order_transitive_and_total(l, data):
    roots = _real_roots(l)
    r1, r2, r3 = (data.draw(st.sampled_from(roots)) for _ in range(3))
    c12, c23, c13 = normal_order_cmp(r1, r2), normal_order_cmp(r2, r3), normal_order_cmp(r1, r3)
    assert (c12 == 0) == (r1 == r2)
    assert normal_order_cmp(r2, r1) == -c12
    if c12 < 0 and c23 < 0:
        assert c13 < 0


@given(st.integers(1, 4))
def test_finite_order_is_lexicographic(l):
    roots = sorted(positive_pairs(l))
    for (p1, p2) in zip(roots, roots[1:]):
        assert normal_order_cmp(AffineRoot.plus(l, *p1), AffineRoot.plus(l, *p2)) < 0


def test_rho_pairing():
    assert rho_pairing(2, 1) == 1
    assert rho_pairing(1, 1) == Fraction(1, 2)
    assert rho_pairing(2, 3) == -1
    with pytest.raises(ValueError):
        rho_pairing(2, 4)


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=5))
def test_weight_conversion(comps):
    l = len(comps) - 1
    w = Weight.from_K(comps)
    om = w.to_omega()
    assert all(om.h(i) == comps[i - 1] - comps[i] for i in range(1, l + 1))
    assert om.to_K().to_omega() == om
    assert om.iota().iota() == om


def test_fundamental_weight_out_of_range_is_zero():
    assert fundamental_weight(3, 0) == Weight.zero(3)
    assert fundamental_weight(3, 4, 5) == Weight.zero(3)
    assert fundamental_weight(3, 2, 5).h(2) == 5


def test_rank_config():
    cfg = RankConfig(2)
    assert cfg.s == (1, 1, 1) and cfg.s_total == 3
    assert RankConfig(2, (2, 1, 0)).s_total == 3
    with pytest.raises(ValueError):
        RankConfig(0)
    with pytest.raises(ValueError):
        RankConfig(2, (1, 1))
