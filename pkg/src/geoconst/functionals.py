"""Pointwise expressions whose suprema define the geometric constants.

Each public ``*_expr`` function evaluates one expression at a fixed pair of
points and checks its preconditions. The matching ``*_xy`` helpers take raw
coordinate arrays and skip validation; the supremum search uses them to
evaluate a whole lattice in one call.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateInputError, ParameterDomainError, PreconditionError
from .norms import SpaceSpec, Vec2, norm, norm_xy

SPHERE_TOL = 1e-9


class ConstantKind(str, Enum):
    LYJ = "lyj"
    LYJ_PRIME = "lyj-prime"
    CNJ = "cnj"
    CNJP = "cnjp"
    JAMES = "james"
    JAMES_LAMBDA_MU = "james-lm"
    JAMES_TYPE = "james-type"


@dataclass(frozen=True)
class ConstantQuery:
    """Which constant to compute, with its parameters.

    Only the fields relevant to ``kind`` are read, but every field is checked
    against its domain so a bad value never sits unnoticed in a query.
    """

    kind: ConstantKind
    xi: float = 1.0
    eta: float = 1.0
    lam: float = 1.0
    mu: float = 1.0
    p_exp: float = 2.0
    t_mean: float = 2.0
    tau: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ConstantKind(self.kind))
        for name in ("xi", "eta", "lam", "mu", "p_exp", "t_mean", "tau"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ParameterDomainError(f"{name} must be finite, got {value}")
        if self.xi <= 0 or self.eta <= 0:
            raise ParameterDomainError(f"xi and eta must be positive, got {self.xi}, {self.eta}")
        if not (0 < self.lam <= 1 and 0 < self.mu <= 1):
            raise ParameterDomainError(f"lam and mu must lie in (0, 1], got {self.lam}, {self.mu}")
        if self.p_exp < 1:
            raise ParameterDomainError(f"p exponent must be >= 1, got {self.p_exp}")
        if self.t_mean <= 0:
            raise ParameterDomainError(f"power-mean exponent must be positive, got {self.t_mean}")
        if not 0 <= self.tau <= 1:
            raise ParameterDomainError(f"tau must lie in [0, 1], got {self.tau}")

    def params(self) -> dict[str, float]:
        """The parameters that ``kind`` actually reads."""
        names = {
            ConstantKind.LYJ: ("xi", "eta"),
            ConstantKind.LYJ_PRIME: ("xi", "eta"),
            ConstantKind.CNJ: (),
            ConstantKind.CNJP: ("p_exp",),
            ConstantKind.JAMES: (),
            ConstantKind.JAMES_LAMBDA_MU: ("lam", "mu"),
            ConstantKind.JAMES_TYPE: ("t_mean", "tau"),
        }[self.kind]
        return {n: getattr(self, n) for n in names}


def power_mean(t: float, a, b):
    """The t-power mean ((a^t + b^t) / 2)^(1/t) of two nonnegative numbers."""
    if not t > 0:
        raise ParameterDomainError(f"power-mean exponent must be positive, got {t}")
    return ((np.power(a, t) + np.power(b, t)) / 2.0) ** (1.0 / t)


# --- array kernels -------------------------------------------------------


def lyj_xy(space, xi, eta, x1, x2, y1, y2):
    num = norm_xy(space, xi * x1 + eta * y1, xi * x2 + eta * y2) ** 2 + norm_xy(
        space, eta * x1 - xi * y1, eta * x2 - xi * y2
    ) ** 2
    return num / ((xi * xi + eta * eta) * (norm_xy(space, x1, x2) ** 2 + norm_xy(space, y1, y2) ** 2))


def lyj_prime_xy(space, xi, eta, x1, x2, y1, y2):
    num = norm_xy(space, xi * x1 + eta * y1, xi * x2 + eta * y2) ** 2 + norm_xy(
        space, eta * x1 - xi * y1, eta * x2 - xi * y2
    ) ** 2
    return num / (2.0 * (norm_xy(space, x1, x2) ** 2 + norm_xy(space, y1, y2) ** 2))


def cnj_xy(space, x1, x2, y1, y2):
    num = norm_xy(space, x1 + y1, x2 + y2) ** 2 + norm_xy(space, x1 - y1, x2 - y2) ** 2
    return num / (2.0 * norm_xy(space, x1, x2) ** 2 + 2.0 * norm_xy(space, y1, y2) ** 2)


def cnjp_xy(space, p, x1, x2, y1, y2):
    num = norm_xy(space, x1 + y1, x2 + y2) ** p + norm_xy(space, x1 - y1, x2 - y2) ** p
    return num / (2.0 ** (p - 1.0) * (norm_xy(space, x1, x2) ** p + norm_xy(space, y1, y2) ** p))


def james_xy(space, x1, x2, y1, y2):
    return np.minimum(norm_xy(space, x1 + y1, x2 + y2), norm_xy(space, x1 - y1, x2 - y2))


def james_lm_xy(space, lam, mu, x1, x2, y1, y2):
    return np.minimum(
        norm_xy(space, lam * x1 + mu * y1, lam * x2 + mu * y2),
        norm_xy(space, mu * x1 - lam * y1, mu * x2 - lam * y2),
    )


def james_type_xy(space, t_mean, tau, x1, x2, y1, y2):
    return power_mean(
        t_mean,
        norm_xy(space, x1 + tau * y1, x2 + tau * y2),
        norm_xy(space, x1 - tau * y1, x2 - tau * y2),
    )


def evaluate_xy(space: SpaceSpec, query: ConstantQuery, x1, x2, y1, y2):
    """Dispatch ``query`` to its array kernel."""
    k = query.kind
    if k is ConstantKind.LYJ:
        return lyj_xy(space, query.xi, query.eta, x1, x2, y1, y2)
    if k is ConstantKind.LYJ_PRIME:
        return lyj_prime_xy(space, query.xi, query.eta, x1, x2, y1, y2)
    if k is ConstantKind.CNJ:
        return cnj_xy(space, x1, x2, y1, y2)
    if k is ConstantKind.CNJP:
        return cnjp_xy(space, query.p_exp, x1, x2, y1, y2)
    if k is ConstantKind.JAMES:
        return james_xy(space, x1, x2, y1, y2)
    if k is ConstantKind.JAMES_LAMBDA_MU:
        return james_lm_xy(space, query.lam, query.mu, x1, x2, y1, y2)
    return james_type_xy(space, query.t_mean, query.tau, x1, x2, y1, y2)


# --- validated scalar API --------------------------------------------------


def _check_pos(**params):
    for name, value in params.items():
        if not (math.isfinite(value) and value > 0):
            raise ParameterDomainError(f"{name} must be a positive finite real, got {value}")


def _check_not_both_zero(x: Vec2, y: Vec2):
    if x.is_zero() and y.is_zero():
        raise DegenerateInputError("x and y are both zero")


def _check_sphere(space: SpaceSpec, **points: Vec2):
    for name, v in points.items():
        n = norm(space, v)
        if abs(n - 1.0) > SPHERE_TOL:
            raise PreconditionError(f"{name} must lie on the unit sphere, has norm {n!r}")


def _check_ball(space: SpaceSpec, **points: Vec2):
    for name, v in points.items():
        n = norm(space, v)
        if n > 1.0 + SPHERE_TOL:
            raise PreconditionError(f"{name} must lie in the unit ball, has norm {n!r}")


def lyj_expr(space: SpaceSpec, xi: float, eta: float, x: Vec2, y: Vec2) -> float:
    """(|xi x + eta y|^2 + |eta x - xi y|^2) / ((xi^2 + eta^2)(|x|^2 + |y|^2))."""
    _check_pos(xi=xi, eta=eta)
    _check_not_both_zero(x, y)
    return float(lyj_xy(space, xi, eta, x.a, x.b, y.a, y.b))


def lyj_prime_expr(space: SpaceSpec, xi: float, eta: float, x: Vec2, y: Vec2) -> float:
    """Skew ratio with the unnormalized denominator 2(|x|^2 + |y|^2).

    Defined for unit vectors only; the denominator is kept in its literal
    form even though it equals 4 on the sphere.
    """
    _check_pos(xi=xi, eta=eta)
    _check_sphere(space, x=x, y=y)
    return float(lyj_prime_xy(space, xi, eta, x.a, x.b, y.a, y.b))


def cnj_expr(space: SpaceSpec, x: Vec2, y: Vec2) -> float:
    """Parallelogram-law ratio (|x+y|^2 + |x-y|^2) / (2|x|^2 + 2|y|^2)."""
    _check_not_both_zero(x, y)
    return float(cnj_xy(space, x.a, x.b, y.a, y.b))


def cnjp_expr(space: SpaceSpec, p_exp: float, x: Vec2, y: Vec2) -> float:
    """(|x+y|^p + |x-y|^p) / (2^(p-1) (|x|^p + |y|^p))."""
    if not (math.isfinite(p_exp) and p_exp >= 1):
        raise ParameterDomainError(f"p exponent must be >= 1, got {p_exp}")
    _check_not_both_zero(x, y)
    return float(cnjp_xy(space, p_exp, x.a, x.b, y.a, y.b))


def james_min(space: SpaceSpec, x: Vec2, y: Vec2) -> float:
    """min(|x+y|, |x-y|) for unit vectors x, y."""
    _check_sphere(space, x=x, y=y)
    return float(james_xy(space, x.a, x.b, y.a, y.b))


def james_lm_min(space: SpaceSpec, lam: float, mu: float, x: Vec2, y: Vec2) -> float:
    """min(|lam x + mu y|, |mu x - lam y|) for x, y in the unit ball."""
    if not (0 < lam <= 1 and 0 < mu <= 1):
        raise ParameterDomainError(f"lam and mu must lie in (0, 1], got {lam}, {mu}")
    _check_ball(space, x=x, y=y)
    return float(james_lm_xy(space, lam, mu, x.a, x.b, y.a, y.b))


def james_type_expr(space: SpaceSpec, t_mean: float, tau: float, x: Vec2, y: Vec2) -> float:
    """Power mean of |x + tau y| and |x - tau y| for unit vectors x, y."""
    _check_pos(t_mean=t_mean)
    if not 0 <= tau <= 1:
        raise ParameterDomainError(f"tau must lie in [0, 1], got {tau}")
    _check_sphere(space, x=x, y=y)
    return float(james_type_xy(space, t_mean, tau, x.a, x.b, y.a, y.b))
