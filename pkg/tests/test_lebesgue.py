import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fhstab.extended import ExtendedConfig, ExtendedInterpolant, extrapolation_coeffs, reduced_coeffs
from fhstab.fh import fh_weights
from fhstab.grid import make_equispaced
from fhstab.lebesgue import (
    extended_lebesgue_constant,
    extended_lebesgue_function,
    fh_lebesgue_constant,
    fh_lebesgue_function,
    kappa,
    lebesgue_constant,
    naive_bound_function,
    poly_lebesgue_constant,
    scan_points,
    theorem1_check,
    worst_case_vector,
)
from fhstab.precision import PRECISE


def test_kappa_values():
    assert kappa(2) == pytest.approx(1 / 12, rel=1e-15)
    assert kappa(4) == pytest.approx(161 / 240, rel=1e-15)
    assert kappa(3) == pytest.approx(25 / 56, rel=1e-15)
    with pytest.raises(ValueError):
        kappa(1)


def test_small_polynomial_constants():
    assert poly_lebesgue_constant(1) == pytest.approx(1.0, abs=1e-12)
    assert poly_lebesgue_constant(2) == pytest.approx(1.25, rel=1e-10)
    assert poly_lebesgue_constant(3) == pytest.approx(1.6311, abs=1e-4)
    assert poly_lebesgue_constant(4) == pytest.approx(2.2078, abs=1e-4)


@pytest.mark.parametrize("d", [2, 5, 10, 15, 20])
def test_polynomial_constant_sandwich(d):
    lam = poly_lebesgue_constant(d)
    assert 2.0 ** (d - 2) / d**2 < lam < 2.0 ** (d + 3) / d


def test_worst_case_vector():
    y = worst_case_vector(8, 3).values
    assert list(y) == [-1, -1, 1, -1, 1, -1, 1, -1, 1]
    with pytest.raises(ValueError):
        worst_case_vector(4, 3)


@given(st.integers(2, 60), st.integers(0, 6), st.floats(-1, 1))
def test_fh_lebesgue_at_least_one(n, delta, t):
    delta = min(delta, n)
    g = make_equispaced(-1, 1, n)
    assert fh_lebesgue_function(g, fh_weights(n, delta), t) >= 1 - 1e-12


@given(st.integers(3, 30), st.integers(0, 5), st.integers(0, 6), st.data())
def test_extended_lebesgue_at_least_one(n, d, nt, data):
    nt = min(nt, n - 1)
    dt = data.draw(st.integers(0, nt))
    cfg = ExtendedConfig(n, d, nt, dt)
    it = ExtendedInterpolant.build(make_equispaced(-1, 1, n), cfg)
    t = np.array(data.draw(st.lists(st.floats(-1, 1), min_size=1, max_size=8)))
    v = extended_lebesgue_function(cfg, it.emap, it.weights, it.gridx, t)
    assert np.all(v >= 1 - 1e-10)
    assert np.all(naive_bound_function(it.weights, it.gridx, t) >= 1 - 1e-12)


def test_node_values_are_one():
    cfg = ExtendedConfig(10, 2, 3, 3)
    it = ExtendedInterpolant.build(make_equispaced(-1, 1, 10), cfg)
    x = it.grid.nodes()
    np.testing.assert_array_equal(extended_lebesgue_function(cfg, it.emap, it.weights, it.gridx, x), 1.0)


def test_d_zero_reduces_to_equal_weights():
    n = 20
    g = make_equispaced(-1, 1, n)
    cfg = ExtendedConfig(n, 0, 0, 0)
    it = ExtendedInterpolant.build(g, cfg)
    t = np.linspace(-0.99, 0.99, 31) + 1e-4
    np.testing.assert_allclose(
        extended_lebesgue_function(cfg, it.emap, it.weights, it.gridx, t),
        fh_lebesgue_function(g, fh_weights(n, 0), t),
        rtol=1e-12,
    )


def test_compensated_matches_plain_for_small_d():
    cfg = ExtendedConfig(40, 4, 6, 5)
    it = ExtendedInterpolant.build(make_equispaced(-1, 1, 40), cfg)
    t = np.linspace(-0.999, 0.999, 101)
    a = extended_lebesgue_function(cfg, it.emap, it.weights, it.gridx, t, compensated=False)
    b = extended_lebesgue_function(cfg, it.emap, it.weights, it.gridx, t)
    np.testing.assert_allclose(a, b, rtol=1e-11)


def test_compensated_against_high_precision_reference():
    n, d = 100, 30
    cfg = ExtendedConfig(n, d, d, d)
    it = ExtendedInterpolant.build(make_equispaced(-1, 1, n), cfg)
    emap = extrapolation_coeffs(d, d, d, as_float=False)
    lin = emap.to_linear(n)
    ar = PRECISE.arith()
    h = ar.div(ar.num(2), ar.num(n))
    xs = [ar.add(ar.num(-1), ar.mul(ar.num(i), h)) for i in range(-d, n + d + 1)]
    for t in (-0.99537, 0.4013, 0.99131):
        tm = ar.num(t)
        q = [ar.div(ar.num(w), ar.sub(tm, x)) for w, x in zip(it.weights.exact, xs)]
        total, Q = ar.num(0), ar.num(0)
        for v in q:
            Q = ar.add(Q, v)
        for j in range(n + 1):
            c = q[d + j]
            for r in range(d):
                c = ar.add(c, ar.mul(q[r], lin.left[r][j]))
                c = ar.add(c, ar.mul(q[d + n + 1 + r], lin.right[r][j]))
            total = ar.add(total, abs(c))
        ref = float(ar.div(total, abs(Q)))
        got = extended_lebesgue_function(cfg, emap, it.weights, it.gridx, t)
        assert got == pytest.approx(ref, rel=1e-6)


def test_scan_points_nest_when_doubled():
    g = make_equispaced(-1, 1, 7)
    _, t16 = scan_points(g, 16)
    _, t32 = scan_points(g, 32)
    assert set(t16.ravel()) <= set(t32.ravel())


def test_refinement_never_below_sampled_max():
    g = make_equispaced(-1, 1, 30)
    rep = fh_lebesgue_constant(g, 3, 32)
    assert rep.constant >= rep.sampled_max
    finer = fh_lebesgue_constant(g, 3, 512)
    assert abs(finer.constant - rep.constant) <= 1e-6 * finer.constant


def test_lebesgue_constant_rejects_coarse_sampling():
    g = make_equispaced(-1, 1, 5)
    with pytest.raises(ValueError):
        lebesgue_constant(lambda t: np.ones_like(t), g, 8)


@pytest.mark.parametrize("delta", range(1, 11))
def test_fh_bound(delta):
    for n in sorted({delta, 10, 40, 100, 200} - set(range(delta))):
        lam = fh_lebesgue_constant(make_equispaced(-1, 1, n), delta, 32).constant
        assert lam <= 2 ** (delta - 1) * (2 + math.log(n))


def test_extended_constant_tracks_polynomial_constant():
    rep = extended_lebesgue_constant(make_equispaced(-1, 1, 100), ExtendedConfig(100, 20, 20, 20), 64)
    lam20 = poly_lebesgue_constant(20)
    assert rep.constant == pytest.approx(lam20, rel=0.01)
    assert rep.naive_bound_constant < 5 < rep.constant
    assert rep.log_bound == pytest.approx(2 + math.log(140))


def test_kappa_bound_small_case():
    rep = theorem1_check(12, 4)
    assert rep.holds and rep.sampled_holds
    assert rep.lhs <= rep.sampled_constant * (1 + 1e-12)
    assert -1 < rep.t_star < -1 + 2 / 12


@pytest.mark.parametrize("n,d,nt", [(4, 1, 1), (5, 2, 2), (6, 2, 1), (6, 1, 2)])
def test_brute_force_oracle(n, d, nt):
    cfg = ExtendedConfig(n, d, nt, nt)
    it = ExtendedInterpolant.build(make_equispaced(-1, 1, n), cfg)
    t = np.linspace(-1, 1, 203)[1:-1] + 1e-3
    formula = extended_lebesgue_function(cfg, it.emap, it.weights, it.gridx, t)
    best = np.zeros_like(t)
    for signs in itertools.product((-1.0, 1.0), repeat=n + 1):
        best = np.maximum(best, np.abs(it(np.array(signs), t)))
    np.testing.assert_allclose(best, formula, rtol=1e-10)
    plain = np.abs(reduced_coeffs(cfg, it.emap, it.weights, it.gridx, t)).sum(axis=1) / np.abs(it.Q(t))
    np.testing.assert_allclose(plain, formula, rtol=1e-10)
