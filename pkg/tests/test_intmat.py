import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from abtqft import intmat


def entries(lo=-5, hi=5):
    return st.integers(min_value=lo, max_value=hi)


def matrices(max_dim=4):
    return st.integers(min_value=0, max_value=max_dim).flatmap(
        lambda m: st.integers(min_value=0, max_value=max_dim).flatmap(
            lambda n: st.lists(
                st.lists(entries(), min_size=n, max_size=n),
                min_size=m, max_size=m).map(
                    lambda rows: intmat.as_int_matrix(rows, (m, n)))))


def test_smith_worked_example():
    M = intmat.as_int_matrix([[2, 4], [6, 8]])
    U, D, V = intmat.smith_normal_form(M)
    assert [int(D[i, i]) for i in range(2)] == [2, 4]
    assert (U @ M @ V == D).all()
    # d1 is the gcd of all entries, d1*d2 the absolute determinant
    assert D[0, 0] == 2
    assert D[0, 0] * D[1, 1] == abs(intmat.det(M)) == 8


def test_smith_identity_and_zero():
    U, D, V = intmat.smith_normal_form([[1, 0], [0, 1]])
    assert D.tolist() == [[1, 0], [0, 1]]
    U, D, V = intmat.smith_normal_form([[0]])
    assert D.tolist() == [[0]]


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_smith_properties(M):
    s = intmat.smith(M)
    assert (s.U @ M @ s.V == s.D).all()
    assert abs(intmat.det(s.U)) == 1
    assert abs(intmat.det(s.V)) == 1
    assert (s.U @ s.U_inv == intmat.identity(M.shape[0])).all()
    assert (s.V @ s.V_inv == intmat.identity(M.shape[1])).all()
    for i in range(len(s.diag) - 1):
        if s.diag[i] != 0:
            assert s.diag[i + 1] % s.diag[i] == 0
        else:
            assert s.diag[i + 1] == 0
    assert all(d >= 0 for d in s.diag)
    # the first invariant factor is the gcd of all entries
    entries = [abs(int(v)) for v in M.flat if v != 0]
    if entries:
        g = 0
        for v in entries:
            g = math.gcd(g, v)
        assert s.diag[0] == g


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_basis_annihilates(M):
    K = intmat.kernel_basis(M)
    if K.shape[1]:
        assert not (M @ K).any()


@settings(max_examples=150, deadline=None)
@given(matrices(3), st.lists(entries(-3, 3), min_size=0, max_size=3))
def test_solve_linear_roundtrip(M, x):
    if len(x) != M.shape[1]:
        x = (x + [0] * M.shape[1])[:M.shape[1]]
    b = M @ np.array(x, dtype=object) if M.shape[1] else np.zeros(
        M.shape[0], dtype=object)
    sol = intmat.solve_linear(M, b)
    assert sol is not None
    assert ((M @ sol if M.shape[1] else b) == b).all()


def test_solve_linear_unsolvable():
    assert intmat.solve_linear(intmat.as_int_matrix([[2]]), [3]) is None
    assert intmat.solve_linear(intmat.as_int_matrix([[0]]), [1]) is None


def test_det_examples():
    assert intmat.det(intmat.identity(3)) == 1
    assert intmat.det(intmat.as_int_matrix([[2, 0], [0, 3]])) == 6
    assert intmat.det(intmat.as_int_matrix([[0, 1], [1, 0]])) == -1
    assert intmat.det(intmat.as_int_matrix([[1, 2], [2, 4]])) == 0


def test_as_int_matrix_rejects_floats_and_bools():
    with pytest.raises(ValueError):
        intmat.as_int_matrix([[1.5]])
    with pytest.raises(ValueError):
        intmat.as_int_matrix([[True]])
