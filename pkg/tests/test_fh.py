import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fhstab.fh import (
    barycentric,
    derivative_matrices,
    derivative_rows,
    fh_derivative_at_boundary,
    fh_eval_barycentric,
    fh_eval_blended,
    fh_weight_ints,
    fh_weights,
    normalize_derivative_matrices,
)
from fhstab.grid import make_equispaced


@pytest.mark.parametrize(
    "n,delta,expected",
    [
        (4, 2, [1, -3, 4, -3, 1]),
        (3, 0, [1, -1, 1, -1]),
        (2, 2, [1, -2, 1]),
        (5, 1, [-1, 2, -2, 2, -2, 1]),
    ],
)
def test_weight_examples(n, delta, expected):
    assert fh_weight_ints(n, delta) == expected
    assert list(fh_weights(n, delta).values) == expected


def test_delta_equal_n_gives_binomials():
    for n in range(1, 12):
        assert [abs(v) for v in fh_weight_ints(n, n)] == [math.comb(n, i) for i in range(n + 1)]


@given(st.integers(1, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_weight_sign_and_symmetry(nd):
    n, delta = nd
    w = fh_weight_ints(n, delta)
    assert all(v != 0 for v in w)
    assert all(w[i] * w[i + 1] < 0 for i in range(n))
    assert [abs(v) for v in w] == [abs(v) for v in reversed(w)]
    assert max(abs(v) for v in w) <= 2 ** delta


def test_weight_validation():
    with pytest.raises(ValueError):
        fh_weights(3, 4)
    with pytest.raises(ValueError):
        fh_weights(3, -1)


def test_barycentric_matches_blended_small_case():
    g = make_equispaced(0, 2, 2)
    y = [0.0, 1.0, 4.0]
    t = 0.5
    b = fh_eval_barycentric(g, fh_weights(2, 1), y, t)
    c = fh_eval_blended(g, 1, y, t)
    assert b == pytest.approx(0.25, rel=1e-14)
    assert c == pytest.approx(0.25, rel=1e-14)


def test_interpolates_at_nodes():
    g = make_equispaced(-1, 1, 10)
    y = np.sin(3 * g.nodes())
    np.testing.assert_array_equal(fh_eval_barycentric(g, fh_weights(10, 3), y, g.nodes()), y)


@given(st.integers(2, 25), st.integers(0, 6), st.integers(0, 2**31 - 1))
def test_reproduces_polynomials_up_to_delta(n, delta, seed):
    delta = min(delta, n)
    g = make_equispaced(-1, 1, n)
    coef = np.random.default_rng(seed).normal(size=delta + 1)
    p = np.polynomial.Polynomial(coef)
    t = np.linspace(-0.999, 0.999, 57)
    got = fh_eval_barycentric(g, fh_weights(n, delta), p(g.nodes()), t)
    np.testing.assert_allclose(got, p(t), rtol=1e-10, atol=1e-10 * np.abs(coef).sum())


def test_barycentric_raises_on_nonfinite():
    with pytest.raises(FloatingPointError):
        barycentric(np.array([0.0, 1.0]), np.array([1.0, -1.0]), np.array([np.inf, 1.0]), 0.5)


@pytest.mark.parametrize("delta", [1, 2, 3, 4])
def test_convergence_order(delta):
    f = lambda t: np.exp(np.sin(2 * t))
    t = np.linspace(-1, 1, 2001)
    errs = []
    for n in (40, 80, 160):
        g = make_equispaced(-1, 1, n)
        errs.append(np.max(np.abs(fh_eval_barycentric(g, fh_weights(n, delta), f(g.nodes()), t) - f(t))))
    rates = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert rates[-1] > delta + 1 - 0.5


def test_first_derivative_two_nodes():
    E = derivative_matrices([1, -1], k_max=1, h=0.5)
    np.testing.assert_array_equal(E[1].entries, [[-2.0, 2.0], [-2.0, 2.0]])
    En = normalize_derivative_matrices(E, 0.5)
    np.testing.assert_array_equal(En[1].entries, [[-1.0, 1.0], [-1.0, 1.0]])


def test_normalized_rows_are_forward_differences():
    # polynomial case delta = n = 3: row 0 of h^k E^(k) / k! on 0..3 in exact arithmetic
    w = [Fraction(v) for v in fh_weight_ints(3, 3)]
    rows = derivative_rows(w, 3, rows=[0])
    assert rows[1][0] == [Fraction(-11, 6), 3, Fraction(-3, 2), Fraction(1, 3)]
    assert rows[2][0] == [1, Fraction(-5, 2), 2, Fraction(-1, 2)]
    assert rows[3][0] == [Fraction(-1, 6), Fraction(1, 2), Fraction(-1, 2), Fraction(1, 6)]


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))), st.integers(1, 4))
def test_derivative_row_sums_vanish(nd, k_max):
    n, delta = nd
    w = [Fraction(v) for v in fh_weight_ints(n, delta)]
    rows = derivative_rows(w, k_max)
    for k in range(1, k_max + 1):
        for i in range(n + 1):
            assert sum(rows[k][i]) == 0


def test_derivative_exact_on_polynomials():
    # E^(k) applied to samples of a degree-delta polynomial gives its derivatives at nodes
    n, delta, h = 8, 4, 0.25
    x = np.arange(n + 1) * h
    p = np.polynomial.Polynomial([0.3, -1.0, 0.5, 2.0, -0.7])
    E = derivative_matrices(fh_weights(n, delta), k_max=3, h=h)
    for k in (1, 2, 3):
        for row in (0, n):
            got = fh_derivative_at_boundary(p(x), E[k], row)
            assert got == pytest.approx(p.deriv(k)(x[row]), rel=1e-9, abs=1e-9)


def test_derivative_rejects_bad_input():
    with pytest.raises(ValueError):
        derivative_rows([1, 0, 1], 1)
    with pytest.raises(ValueError):
        derivative_rows([1, -1], -1)
    with pytest.raises(ValueError):
        derivative_matrices([1, -1], n_local=3)


def test_normalized_recurrence_matches_scaled_physical():
    w = fh_weights(6, 3)
    h = 0.125
    E = normalize_derivative_matrices(derivative_matrices(w, k_max=3, h=h), h)
    N = derivative_rows([float(v) for v in w.exact], 3)
    for k in range(4):
        for i in range(7):
            np.testing.assert_allclose(E[k].entries[i], N[k][i], rtol=1e-12, atol=1e-12)
