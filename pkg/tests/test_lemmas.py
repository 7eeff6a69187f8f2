import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geoconst.errors import ParameterDomainError
from geoconst.lemmas import (
    lemma1_bound,
    lemma1_check,
    lemma1_lhs,
    lemma2_f,
    lemma2_f_corner,
    lemma2_g,
    lemma2_g_corner,
    lemma2_max_check,
)

SQRT2 = math.sqrt(2)


def test_lemma1_lhs_examples():
    lam = SQRT2
    assert lemma1_lhs(lam, 1 / lam, 1 / lam) == pytest.approx(1, abs=1e-15)
    assert lemma1_lhs(lam, 1 / lam, 1 / lam) == pytest.approx(2 - 2 / lam**2, abs=1e-15)
    for lam in (SQRT2, 2, 7.5):
        assert lemma1_lhs(lam, 0, 0) == 1
    assert lemma1_lhs(2, 0.5, 0) == pytest.approx(math.sqrt(3) / 2, abs=1e-15)


def test_lemma1_lhs_is_even_in_each_coordinate():
    assert lemma1_lhs(3, -0.2, 0.1) == lemma1_lhs(3, 0.2, 0.1) == lemma1_lhs(3, 0.2, -0.1)


def test_lemma1_domain():
    with pytest.raises(ParameterDomainError):
        lemma1_lhs(1.4, 0, 0)
    with pytest.raises(ParameterDomainError):
        lemma1_lhs(2, 0.6, 0)
    with pytest.raises(ParameterDomainError):
        lemma1_check(1.3)
    with pytest.raises(ParameterDomainError):
        lemma1_check(2, grid_n=1)


def test_lemma1_check_at_sqrt2_attains_bound_at_corner():
    res = lemma1_check(SQRT2, 200)
    assert res.passed
    assert res.argmax == pytest.approx((1 / SQRT2, 1 / SQRT2), abs=1e-15)
    assert res.max_value == pytest.approx(2 - 2 / SQRT2**2, abs=1e-9)


@pytest.mark.parametrize("lam", [2.0, 3.0, 10.0])
def test_lemma1_check_passes(lam):
    res = lemma1_check(lam, 200)
    assert res.passed
    assert res.margin >= -1e-12
    assert res.reference == lemma1_bound(lam)


def test_lemma1_smallest_grid():
    res = lemma1_check(2, 2)
    assert res.passed
    assert res.argmax == (0.5, 0.5)


@settings(max_examples=100)
@given(st.floats(SQRT2, 20), st.floats(0, 1), st.floats(0, 1))
def test_lemma1_bound_holds_off_lattice(lam, a, b):
    assert lemma1_lhs(lam, a / lam, b / lam) <= lemma1_bound(lam) + 1e-12


# --- lemma 2 ---------------------------------------------------------------


@pytest.mark.parametrize("lam", [1.0, 1.05, 1.3])
@pytest.mark.parametrize("t, xi, eta", [(0.0, 1, 1), (0.4, 2, 3), (1.0, 1.5, 0.5)])
def test_lemma2_stated_values(lam, t, xi, eta):
    h = 1 / lam
    s = math.sqrt(1 - h * h)
    assert lemma2_f(lam, t, xi, eta, 0, 0) == pytest.approx(2 * t * xi * eta, abs=1e-14)
    assert lemma2_g(lam, t, xi, eta, 0, 0) == pytest.approx(2 * t * xi * eta, abs=1e-14)
    assert lemma2_f(lam, t, xi, eta, h, h) == pytest.approx(lemma2_f_corner(lam, t, xi, eta), abs=1e-12)
    assert lemma2_g(lam, t, xi, eta, h, h) == pytest.approx(lemma2_g_corner(lam, t, xi, eta), abs=1e-12)
    assert lemma2_f(lam, t, xi, eta, 0, h) == pytest.approx(2 * t * xi * eta * s + t * t * xi * xi, abs=1e-14)
    assert lemma2_g(lam, t, xi, eta, h, 0) == pytest.approx(2 * t * xi * eta * s + xi * xi, abs=1e-14)


def test_lemma2_corner_forms_use_lambda_squared():
    lam, t, xi, eta = 1.2, 1.0, 1.0, 1.0
    assert lemma2_f_corner(lam, t, xi, eta) == pytest.approx(4 * (lam**2 - 1) / lam**2 + 2, rel=1e-15)


@settings(max_examples=300)
@given(st.floats(1, 1.414), st.floats(0, 1), st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0, 1), st.floats(0, 1))
def test_f_and_g_swap(lam, t, xi, eta, a, b):
    x, y = a / lam, b / lam
    assert lemma2_f(lam, t, xi, eta, x, y) == pytest.approx(lemma2_g(lam, t, eta, xi, x, y), rel=1e-14, abs=1e-14)


def test_lemma2_domain():
    with pytest.raises(ParameterDomainError):
        lemma2_max_check(1.5, 0.5, 1, 1)
    with pytest.raises(ParameterDomainError):
        lemma2_max_check(SQRT2, 0.5, 1, 1)
    with pytest.raises(ParameterDomainError):
        lemma2_max_check(0.9, 0.5, 1, 1)
    with pytest.raises(ParameterDomainError):
        lemma2_f(1.2, 1.5, 1, 1, 0, 0)
    with pytest.raises(ParameterDomainError):
        lemma2_g(1.2, 0.5, 0, 1, 0, 0)
    with pytest.raises(ParameterDomainError):
        lemma2_f(1.2, 0.5, 1, 1, 0.9, 0)


def test_lemma2_check_example_passes():
    res = lemma2_max_check(1.2, 0.5, 1, 1, 400)
    assert res.passed
    assert res.f.argmax == pytest.approx((1 / 1.2, 1 / 1.2), abs=1e-15)
    assert res.g.argmax == pytest.approx((1 / 1.2, 1 / 1.2), abs=1e-15)


@pytest.mark.parametrize("lam", [1.0, 1.2, 1.4])
def test_lemma2_holds_at_unit_weights_and_t_one(lam):
    assert lemma2_max_check(lam, 1.0, 1, 1).passed


def test_lemma2_t_zero_ties_resolve_to_corner():
    # with t = 0, f = lambda^2 eta^2 x^2 is flat in y: every point of the edge x = 1/lambda ties
    res = lemma2_max_check(1.2, 0.0, 1, 1, 50)
    assert res.passed
    assert res.f.argmax == pytest.approx((1 / 1.2, 1 / 1.2))


def _edge_max(fn, lam, t, xi, eta):
    e = np.linspace(0, 1 / lam, 200_001)
    h = 1 / lam
    return max(fn(lam, t, xi, eta, h, e).max(), fn(lam, t, xi, eta, e, h).max())


def test_lemma2_fails_when_the_edge_beats_the_corner():
    # (lambda, t, xi, eta) = (1.05, 1, 2, 3): an independent dense scan of the
    # edge x = 1/lambda finds values about 0.0173 above the corner, so the
    # lattice check must report failure rather than pass
    lam, t, xi, eta = 1.05, 1.0, 2.0, 3.0
    corner = lemma2_f_corner(lam, t, xi, eta)
    assert _edge_max(lemma2_f, lam, t, xi, eta) - corner == pytest.approx(0.01732, abs=1e-4)
    res = lemma2_max_check(lam, t, xi, eta, 400)
    assert not res.passed
    assert res.f.max_value - res.f.reference == pytest.approx(0.01730, abs=1e-4)
    assert res.f.argmax[0] == pytest.approx(1 / lam)
    assert res.f.argmax[1] < 1 / lam


def test_lemma2_lattice_max_is_monotone_in_refinement():
    lam, t, xi, eta = 1.05, 1.0, 2.0, 3.0
    # nested lattices: 2k - 1 points contain every point of the k-point lattice
    prev = -math.inf
    for n in (11, 21, 41, 81, 161):
        cur = lemma2_max_check(lam, t, xi, eta, n).f.max_value
        assert cur >= prev - 1e-9
        prev = cur
