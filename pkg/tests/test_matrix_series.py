from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from poincare_deform.algebra.matrix import (
    Matrix,
    commutator,
    components_from_layout,
    hermitian_p_layout,
    hermitian_x_layout,
    identity,
    kron,
    swap,
)
from poincare_deform.algebra.ring import Ring
from poincare_deform.algebra.series import exp_matrix, series_binomial, series_sqrt_inv
from poincare_deform.spinless import f_coefficient

RING = Ring(("a", "b", "c", "d", "v0", "v1", "v2", "v3"), name="matrix test")
ints = st.integers(-5, 5)


def const_matrix(vals, n=2):
    return Matrix(RING, [[RING.const(vals[i * n + j]) for j in range(n)] for i in range(n)])


@given(st.lists(ints, min_size=4, max_size=4), st.lists(ints, min_size=4, max_size=4))
def test_kron_first_factor_is_slow_index(av, bv):
    A, B = const_matrix(av), const_matrix(bv)
    K = kron(A, B)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l_ in range(2):
                    assert K[2 * i + k, 2 * j + l_] == A[i, j] * B[k, l_]


@given(st.lists(ints, min_size=4, max_size=4), st.lists(ints, min_size=4, max_size=4))
def test_swap_exchanges_factors(av, bv):
    A, B = const_matrix(av), const_matrix(bv)
    pi = swap(RING)
    assert pi * kron(A, B) * pi == kron(B, A)
    assert pi * pi == identity(RING, 4)


def test_det_and_adjugate():
    a, b, c, d = (RING.gen(n) for n in "abcd")
    M = Matrix(RING, [[a, b], [c, d]])
    assert M.det2() == a * d - b * c
    assert M * M.adjugate2() == identity(RING, 2) * M.det2()
    assert commutator(M, M).is_zero()


def test_layouts_roundtrip_and_determinants():
    names = ("v0", "v1", "v2", "v3")
    v = [RING.gen(n) for n in names]
    p = hermitian_p_layout(RING, names)
    x = hermitian_x_layout(RING, names)
    assert components_from_layout(p, "p") == v
    assert components_from_layout(x, "x") == v
    minkowski = v[0] ** 2 - v[1] ** 2 - v[2] ** 2 - v[3] ** 2
    assert p.det2() == minkowski
    assert x.det2() == minkowski
    # the x layout is the adjugate of the p layout: p x = det 1
    assert p * x == identity(RING, 2) * minkowski


@given(st.lists(ints, min_size=4, max_size=4))
def test_exp_matrix_matches_sympy(vals):
    order = 5
    M = const_matrix(vals)
    E = exp_matrix(M * RING.lam, order)
    S = sympy.Matrix(2, 2, vals)
    for k in range(order):
        term = S ** k / sympy.factorial(k)
        for i in range(2):
            for j in range(2):
                assert E[i, j].lam_coeff(k) == RING.const(Fraction(str(term[i, j])))


@given(st.integers(-3, 3), st.integers(-3, 3))
def test_sqrt_inv_series(c1, c2):
    order = 6
    lam = RING.lam
    s = RING.one() + lam * c1 + lam ** 2 * c2
    inv = series_sqrt_inv(s, order)
    assert (inv * inv * s).truncate(order) == RING.one()
    cube = series_binomial(s, Fraction(1, 3), order)
    assert (cube * cube * cube).truncate(order) == s.truncate(order)


def test_f_coefficients_match_sqrt_series():
    t = sympy.Symbol("t")
    ser = sympy.series(sympy.sqrt(1 - t ** 2), t, 0, 22).removeO()
    for n in range(1, 11):
        assert f_coefficient(n) == Fraction(str(-ser.coeff(t, 2 * n)))
    assert f_coefficient(1) == Fraction(1, 2)
    assert f_coefficient(2) == Fraction(1, 8)
