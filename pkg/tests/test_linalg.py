import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3lat import linalg
from oracles import elementary_divisors, sympy_det

int_matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))


@given(int_matrices)
def test_determinant_matches_sympy(m):
    assert linalg.determinant(m) == sympy_det(m)


@settings(max_examples=60)
@given(int_matrices)
def test_snf_transforms_and_divisors(m):
    s, u, v = linalg.smith_normal_form(m)
    assert linalg.mat_mul(linalg.mat_mul(u, m), v) == linalg.freeze(s)
    assert abs(linalg.determinant(u)) == 1 and abs(linalg.determinant(v)) == 1
    n = len(m)
    diag = [s[i][i] for i in range(n)]
    assert all(s[i][j] == 0 for i in range(n) for j in range(n) if i != j)
    assert sorted(diag) == elementary_divisors(m)
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=60)
@given(int_matrices)
def test_integer_kernel_saturated(m):
    ker = linalg.integer_kernel(m, len(m[0]))
    for k in ker:
        assert all(x == 0 for x in linalg.mat_vec(m, k))
    if ker:
        assert elementary_divisors(ker) == [1] * len(ker)


def test_rank_mod_p():
    assert linalg.rank_mod_p([[2, 0], [0, 2]], 2) == 0
    assert linalg.rank_mod_p([[2, 0], [0, 2]], 3) == 2
    assert linalg.rank_mod_p([[0, 1], [1, 0]], 2) == 2


def test_rational_inverse():
    inv = linalg.rational_inverse([[2, 1], [1, 1]])
    assert linalg.mat_mul(inv, [[2, 1], [1, 1]]) == linalg.identity(2)
    assert linalg.rational_inverse([[1, 2], [2, 4]]) is None


@pytest.mark.parametrize("v,expected", [((2, 4, -6), (1, 2, -3)), ((0, 0), (0, 0))])
def test_primitive(v, expected):
    assert linalg.primitive(v) == expected
