from math import comb

import pytest
from hypothesis import given, strategies as st

from qloop.operators import Basis, GradedOperator, total_degree_tuples
from qloop.scalars import SpectralPoly, q_pow, qnum


def _raise(k):
    def act(lab):
        out = list(lab)
        out[k] += 1
        return [(tuple(out), SpectralPoly.const(qnum(lab[k] + 1)))]
    return act


def _lower(k):
    def act(lab):
        if lab[k] == 0:
            return []
        out = list(lab)
        out[k] -= 1
        return [(tuple(out), SpectralPoly.const(1))]
    return act


@given(st.integers(1, 4), st.integers(0, 5))
def test_truncated_basis_count(length, N):
    assert len(total_degree_tuples(length, N)) == comb(N + length, length)


def test_lift_and_safe_columns():
    basis = Basis.truncated(2, 3)
    up = GradedOperator.from_action(basis, _raise(0), 1)
    assert up.lift == 1 and up.reach == 1
    two = up @ up
    assert two.reach == 2
    assert all(basis.degrees[j] <= 1 for j in two.safe_columns())


def test_truncation_never_corrupts_safe_columns():
    small, big = Basis.truncated(2, 3), Basis.truncated(2, 6)
    ops = []
    for b in (small, big):
        a = GradedOperator.from_action(b, _raise(0), 1)
        c = GradedOperator.from_action(b, _lower(0), -1)
        ops.append((c @ a) - (a @ c))
    comm_small, comm_big = ops
    for j in comm_small.safe_columns():
        lab = small.labels[j]
        got = {small.labels[i]: v for i, v in comm_small.column(j).items()}
        want = {big.labels[i]: v for i, v in comm_big.column(big.index[lab]).items()}
        assert got == want


def test_algebra():
    basis = Basis.truncated(1, 4)
    a = GradedOperator.from_action(basis, _raise(0), 1)
    ident = GradedOperator.identity(basis)
    assert (a @ ident) == a and (ident @ a) == a
    assert (a - a).is_zero()
    assert a.scale(q_pow(1)) == a * q_pow(1)


def test_mismatched_bases_rejected():
    x = GradedOperator.identity(Basis.truncated(1, 2))
    y = GradedOperator.identity(Basis.truncated(1, 2))
    with pytest.raises(ValueError):
        x + y
