"""The two auxiliary inequalities behind the L_YJ computation, as code.

``lemma1_*`` covers the bound (lambda^2 - 1)|x1 y1| + sqrt(1-x1^2) sqrt(1-y1^2)
<= 2 - 2/lambda^2 for lambda >= sqrt(2). ``lemma2_*`` covers the claim that
the two quadratic-plus-root forms f and g peak at the corner
(1/lambda, 1/lambda) of [0, 1/lambda]^2 when 1 <= lambda < sqrt(2). Both are
checked by exhaustive lattice scans, not symbolically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterDomainError

SQRT2 = math.sqrt(2.0)
LEMMA1_TOL = 1e-12
CORNER_TOL = 1e-9
CORNER_FORM_TOL = 1e-12
# lattice values closer than this to the maximum count as ties
TIE_TOL = 1e-12
_EDGE_SLACK = 1e-12


@dataclass(frozen=True)
class LatticeCheck:
    """Outcome of one lattice scan.

    ``argmax`` is the maximizing lattice point; among ties within ``TIE_TOL``
    the lexicographically greatest point is reported, which is the corner
    (1/lambda, 1/lambda) whenever the corner attains the maximum.
    ``reference`` is the value the maximum is compared against and
    ``margin = reference - max_value``.
    """

    passed: bool
    argmax: tuple[float, float]
    max_value: float
    reference: float
    margin: float


@dataclass(frozen=True)
class Lemma2Check:
    passed: bool
    f: LatticeCheck
    g: LatticeCheck
    f_corner_stated: float
    g_corner_stated: float


def _check_coords(lam, **coords):
    hi = 1.0 / lam
    for name, v in coords.items():
        v = np.asarray(v)
        if not np.all(np.isfinite(v)) or np.any(np.abs(v) > hi + _EDGE_SLACK):
            raise ParameterDomainError(f"{name} must satisfy |{name}| <= 1/lambda = {hi!r}")


def _lattice_argmax(values: np.ndarray) -> tuple[int, int]:
    top = values.max()
    ties = np.flatnonzero(values.ravel() >= top - TIE_TOL)
    return divmod(int(ties[-1]), values.shape[1])


def _lattice(lam: float, grid_n: int):
    if int(grid_n) != grid_n or grid_n < 2:
        raise ParameterDomainError(f"grid_n must be an integer >= 2, got {grid_n}")
    u = np.linspace(0.0, 1.0 / lam, int(grid_n))
    return u, u[:, None], u[None, :]


# --- lemma 1 ---------------------------------------------------------------


def _check_lemma1_lambda(lam):
    if not (math.isfinite(lam) and lam >= SQRT2):
        raise ParameterDomainError(f"lemma 1 needs lambda >= sqrt(2), got {lam}")


def lemma1_lhs(lam: float, x1, y1):
    """(lambda^2 - 1)|x1 y1| + sqrt(1 - x1^2) sqrt(1 - y1^2)."""
    _check_lemma1_lambda(lam)
    _check_coords(lam, x1=x1, y1=y1)
    return _lemma1(lam, x1, y1)


def _lemma1(lam, x1, y1):
    return (lam**2 - 1) * np.abs(x1 * y1) + np.sqrt(1 - x1**2) * np.sqrt(1 - y1**2)


def lemma1_bound(lam: float) -> float:
    return 2 - 2 / lam**2


def lemma1_check(lam: float, grid_n: int = 200) -> LatticeCheck:
    """Scan [0, 1/lambda]^2 and compare the maximum with 2 - 2/lambda^2."""
    _check_lemma1_lambda(lam)
    u, col, row = _lattice(lam, grid_n)
    values = _lemma1(lam, col, row)
    i, j = _lattice_argmax(values)
    top = float(values[i, j])
    bound = lemma1_bound(lam)
    return LatticeCheck(top <= bound + LEMMA1_TOL, (float(u[i]), float(u[j])), top, bound, bound - top)


# --- lemma 2 ---------------------------------------------------------------


def _check_lemma2(lam, t, xi, eta):
    if not (math.isfinite(lam) and 1 <= lam < SQRT2):
        raise ParameterDomainError(f"lemma 2 needs 1 <= lambda < sqrt(2), got {lam}")
    if not 0 <= t <= 1:
        raise ParameterDomainError(f"t must lie in [0, 1], got {t}")
    if not (xi > 0 and eta > 0):
        raise ParameterDomainError(f"xi and eta must be positive, got {xi}, {eta}")


def _lemma2_common(lam, t, xi, eta, x, y):
    return 2 * t * (lam**2 - 1) * xi * eta * x * y + 2 * t * xi * eta * np.sqrt(1 - x**2) * np.sqrt(1 - y**2)


def _f(lam, t, xi, eta, x, y):
    return _lemma2_common(lam, t, xi, eta, x, y) + lam**2 * t**2 * xi**2 * y**2 + lam**2 * eta**2 * x**2


def _g(lam, t, xi, eta, x, y):
    return _lemma2_common(lam, t, xi, eta, x, y) + lam**2 * t**2 * eta**2 * y**2 + lam**2 * xi**2 * x**2


def lemma2_f(lam: float, t: float, xi: float, eta: float, x, y):
    """2t(l^2-1)xi eta xy + 2t xi eta sqrt(1-x^2)sqrt(1-y^2) + l^2 t^2 xi^2 y^2 + l^2 eta^2 x^2."""
    _check_lemma2(lam, t, xi, eta)
    _check_coords(lam, x=x, y=y)
    return _f(lam, t, xi, eta, x, y)


def lemma2_g(lam: float, t: float, xi: float, eta: float, x, y):
    """``lemma2_f`` with xi^2 and eta^2 exchanged in the two quadratic terms."""
    _check_lemma2(lam, t, xi, eta)
    _check_coords(lam, x=x, y=y)
    return _g(lam, t, xi, eta, x, y)


def lemma2_f_corner(lam: float, t: float, xi: float, eta: float) -> float:
    """Stated corner value 4 t xi eta (l^2 - 1)/l^2 + t^2 xi^2 + eta^2."""
    return 4 * t * xi * eta * (lam**2 - 1) / lam**2 + t**2 * xi**2 + eta**2


def lemma2_g_corner(lam: float, t: float, xi: float, eta: float) -> float:
    """Stated corner value 4 t xi eta (l^2 - 1)/l^2 + t^2 eta^2 + xi^2."""
    return 4 * t * xi * eta * (lam**2 - 1) / lam**2 + t**2 * eta**2 + xi**2


def _corner_scan(fn, stated, lam, t, xi, eta, grid_n) -> LatticeCheck:
    u, col, row = _lattice(lam, grid_n)
    values = fn(lam, t, xi, eta, col, row)
    i, j = _lattice_argmax(values)
    top = float(values[i, j])
    corner = float(fn(lam, t, xi, eta, 1 / lam, 1 / lam))
    ok = top - corner <= CORNER_TOL and abs(corner - stated) <= CORNER_FORM_TOL
    return LatticeCheck(ok, (float(u[i]), float(u[j])), top, corner, corner - top)


def lemma2_max_check(lam: float, t: float, xi: float, eta: float, grid_n: int = 400) -> Lemma2Check:
    """Check that f and g both peak at the corner and match the stated values."""
    _check_lemma2(lam, t, xi, eta)
    fs, gs = lemma2_f_corner(lam, t, xi, eta), lemma2_g_corner(lam, t, xi, eta)
    f = _corner_scan(_f, fs, lam, t, xi, eta, grid_n)
    g = _corner_scan(_g, gs, lam, t, xi, eta, grid_n)
    return Lemma2Check(f.passed and g.passed, f, g, fs, gs)
