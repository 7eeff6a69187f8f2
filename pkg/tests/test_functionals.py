import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geoconst.errors import DegenerateInputError, ParameterDomainError, PreconditionError
from geoconst.functionals import (
    ConstantKind,
    ConstantQuery,
    cnj_expr,
    cnj_xy,
    cnjp_expr,
    cnjp_xy,
    james_lm_min,
    james_min,
    james_type_expr,
    lyj_expr,
    lyj_prime_expr,
    lyj_xy,
    power_mean,
)
from geoconst.norms import SpaceSpec, Vec2, unit_vector

from oracles import mp_lyj_at

EUCLID = SpaceSpec.banas_fraczek(1.0)
SPACES = [
    EUCLID,
    SpaceSpec.banas_fraczek(1.1),
    SpaceSpec.banas_fraczek(2.0),
    SpaceSpec.generalized(1.7, 3.0),
    SpaceSpec.lp(1.0),
    SpaceSpec.lp(4.0),
]


def witness_pair(lam):
    s = math.sqrt(1 - 1 / lam**2)
    return Vec2(1 / lam, s), Vec2(1 / lam, -s)


def test_power_mean():
    assert power_mean(1, 2, 4) == 3
    assert power_mean(2, 0, 2) == pytest.approx(math.sqrt(2))
    for t in (0.1, 1, 2.5, 9):
        assert power_mean(t, 3.7, 3.7) == pytest.approx(3.7, rel=1e-15)
    with pytest.raises(ParameterDomainError):
        power_mean(0, 1, 1)


def test_lyj_y_zero_is_one():
    for s in SPACES:
        assert lyj_expr(s, 2.0, 0.7, Vec2(0.3, -1.2), Vec2(0, 0)) == pytest.approx(1, rel=1e-15)


@pytest.mark.parametrize("lam", [1.0, 1.1, math.sqrt(2), 2.0, 5.0, 37.0])
@pytest.mark.parametrize("xi, eta", [(1, 1), (1, 2), (3, 1), (0.2, 7)])
def test_lyj_at_witness_pair(lam, xi, eta):
    x, y = witness_pair(lam)
    expected = 1 + (2 * xi * eta / (xi**2 + eta**2)) * (1 - 1 / lam**2)
    assert lyj_expr(SpaceSpec.banas_fraczek(lam), xi, eta, x, y) == pytest.approx(expected, abs=1e-12)
    # the same pair evaluated at 50 digits, independent of numpy
    assert float(mp_lyj_at(lam, xi, eta, (x.a, x.b), (y.a, y.b))) == pytest.approx(expected, abs=1e-12)


@settings(max_examples=300)
@given(
    st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5), st.floats(0.1, 10), st.floats(0.1, 10)
)
def test_lyj_is_one_on_euclidean_plane(a, b, c, d, xi, eta):
    x, y = Vec2(a, b), Vec2(c, d)
    if x.is_zero() and y.is_zero():
        return
    if max(abs(a), abs(b), abs(c), abs(d)) < 1e-100:
        return
    assert lyj_expr(EUCLID, xi, eta, x, y) == pytest.approx(1, abs=1e-12)


def test_lyj_degenerate():
    with pytest.raises(DegenerateInputError):
        lyj_expr(EUCLID, 1, 1, Vec2(0, 0), Vec2(0, 0))
    with pytest.raises(ParameterDomainError):
        lyj_expr(EUCLID, 0, 1, Vec2(1, 0), Vec2(0, 0))


def test_lyj_prime_examples():
    e1, e2 = Vec2(1, 0), Vec2(0, 1)
    assert lyj_prime_expr(EUCLID, 1, 1, e1, e2) == pytest.approx(1)
    assert lyj_prime_expr(EUCLID, 1, 1, e1, e1) == pytest.approx(1)
    # witness pair: |x+y| = |(2/l, 0)| = 2 and |x-y| = |(0, 2s)| = 2s, so the
    # ratio is (4 + 4 s^2) / 4 = 2 - 1/l^2
    for lam in (1.2, 2.0, 5.0):
        x, y = witness_pair(lam)
        assert lyj_prime_expr(SpaceSpec.banas_fraczek(lam), 1, 1, x, y) == pytest.approx(2 - 1 / lam**2, abs=1e-14)


def test_lyj_prime_requires_sphere():
    with pytest.raises(PreconditionError):
        lyj_prime_expr(EUCLID, 1, 1, Vec2(1, 0), Vec2(0, 0.5))


def test_cnj_examples():
    rng = np.random.default_rng(3)
    for a, b, c, d in rng.normal(size=(100, 4)):
        assert cnj_expr(EUCLID, Vec2(a, b), Vec2(c, d)) == pytest.approx(1, abs=1e-13)
    for lam in (1.0, 1.5, 2.0, 5.0):
        x, y = witness_pair(lam)
        assert cnj_expr(SpaceSpec.banas_fraczek(lam), x, y) == pytest.approx(2 - 1 / lam**2, abs=1e-14)
    assert cnj_expr(SpaceSpec.banas_fraczek(3), Vec2(0.2, 0.1), Vec2(0, 0)) == pytest.approx(1)
    with pytest.raises(DegenerateInputError):
        cnj_expr(EUCLID, Vec2(0, 0), Vec2(0, 0))


def test_cnj_equals_lyj_at_unit_weights():
    rng = np.random.default_rng(11)
    pts = rng.normal(size=(4, 100_000)) * rng.lognormal(size=(1, 100_000))
    for s in SPACES:
        np.testing.assert_allclose(cnj_xy(s, *pts), lyj_xy(s, 1.0, 1.0, *pts), rtol=0, atol=1e-14)


def test_cnjp_examples():
    rng = np.random.default_rng(5)
    pts = rng.normal(size=(4, 10_000))
    for s in SPACES:
        np.testing.assert_allclose(cnjp_xy(s, 2.0, *pts), cnj_xy(s, *pts), rtol=1e-15)
    for p in (1.0, 2.0, 3.5):
        assert cnjp_expr(SpaceSpec.banas_fraczek(2), p, Vec2(0.3, 0.4), Vec2(0, 0)) == pytest.approx(2 ** (2 - p))
    lam = math.sqrt(2)
    x, y = witness_pair(lam)
    # |x+y| = 2, |x-y| = 2 s = sqrt(2): (4 + 2) / (2 * 2)
    assert cnjp_expr(SpaceSpec.banas_fraczek(lam), 2, x, y) == pytest.approx(1.5, abs=1e-14)
    with pytest.raises(ParameterDomainError):
        cnjp_expr(EUCLID, 0.5, Vec2(1, 0), Vec2(0, 1))


def test_james_min_examples():
    s = SpaceSpec.banas_fraczek(2.0)
    x = unit_vector(s, 0.4)
    assert james_min(s, x, x) == 0
    assert james_min(s, x, -x) == 0
    assert james_min(EUCLID, Vec2(1, 0), Vec2(0, 1)) == pytest.approx(math.sqrt(2))
    with pytest.raises(PreconditionError):
        james_min(s, Vec2(1, 0), Vec2(0, 1))


def test_james_lm_examples():
    s = SpaceSpec.banas_fraczek(1.5)
    for th1, th2 in [(0.1, 2.0), (1.0, 1.3), (3.0, 5.5)]:
        x, y = unit_vector(s, th1), unit_vector(s, th2)
        assert james_lm_min(s, 1, 1, x, y) == james_min(s, x, y)
    assert james_lm_min(s, 0.3, 0.9, Vec2(0, 0), Vec2(0, 0)) == 0
    assert james_lm_min(EUCLID, 0.5, 0.5, Vec2(1, 0), Vec2(0, 1)) == pytest.approx(math.sqrt(2) / 2)
    with pytest.raises(PreconditionError):
        james_lm_min(EUCLID, 1, 1, Vec2(1.1, 0), Vec2(0, 1))
    with pytest.raises(ParameterDomainError):
        james_lm_min(EUCLID, 1.2, 1, Vec2(1, 0), Vec2(0, 1))


def test_james_type_examples():
    s = SpaceSpec.generalized(1.8, 3)
    rng = np.random.default_rng(8)
    for th1, th2 in rng.uniform(0, 2 * math.pi, size=(50, 2)):
        x, y = unit_vector(s, th1), unit_vector(s, th2)
        assert james_type_expr(s, 2.5, 0.0, x, y) == pytest.approx(1, rel=1e-14)
        ex, ey = unit_vector(EUCLID, th1), unit_vector(EUCLID, th2)
        assert james_type_expr(EUCLID, 2, 1, ex, ey) == pytest.approx(math.sqrt(2), rel=1e-14)
    x = unit_vector(s, 0.7)
    assert james_type_expr(s, 1, 1, x, x) == pytest.approx(1)
    with pytest.raises(ParameterDomainError):
        james_type_expr(s, 2, 1.5, x, x)


# --- invariants -----------------------------------------------------------

pos = st.floats(0.05, 20)
ang = st.floats(0, 2 * math.pi)


@settings(max_examples=300)
@given(st.sampled_from(SPACES), pos, pos, ang, ang, st.floats(0, 1), st.floats(-50, 50).filter(lambda c: abs(c) > 1e-3))
def test_lyj_scale_invariance(s, xi, eta, a, b, r, c):
    x, y = unit_vector(s, a), r * unit_vector(s, b)
    assert lyj_expr(s, xi, eta, c * x, c * y) == pytest.approx(lyj_expr(s, xi, eta, x, y), rel=1e-12)


@settings(max_examples=300)
@given(st.sampled_from(SPACES), pos, pos, ang, ang, st.floats(0, 1), st.floats(1e-3, 1e3))
def test_lyj_parameter_scale_invariance(s, xi, eta, a, b, r, c):
    x, y = unit_vector(s, a), r * unit_vector(s, b)
    assert lyj_expr(s, c * xi, c * eta, x, y) == pytest.approx(lyj_expr(s, xi, eta, x, y), rel=1e-12)


@settings(max_examples=300)
@given(st.sampled_from(SPACES), pos, pos, ang, ang, st.floats(0, 1))
def test_lyj_swap_maps_value_set_onto_itself(s, xi, eta, a, b, r):
    # (xi, eta, x, y) and (eta, xi, y, x) give the same value, which is why the
    # supremum is symmetric in (xi, eta)
    x, y = unit_vector(s, a), r * unit_vector(s, b)
    assert lyj_expr(s, eta, xi, y, x) == pytest.approx(lyj_expr(s, xi, eta, x, y), rel=1e-13)


def test_query_validation():
    assert ConstantQuery("lyj", xi=2, eta=3).params() == {"xi": 2, "eta": 3}
    assert ConstantQuery(ConstantKind.CNJ).params() == {}
    for bad in [dict(xi=0), dict(eta=-1), dict(lam=0), dict(mu=1.5), dict(p_exp=0.5), dict(t_mean=0), dict(tau=2)]:
        with pytest.raises(ParameterDomainError):
            ConstantQuery(ConstantKind.LYJ, **bad)
    with pytest.raises(ParameterDomainError):
        ConstantQuery(ConstantKind.LYJ, xi=float("nan"))
