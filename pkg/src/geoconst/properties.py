"""One-directional structural tests driven by L_YJ values.

L_YJ < 2 implies super-reflexivity. L_YJ below
((xi+eta)^2 + (2 eta - xi)^2) / (2 (xi^2 + eta^2)) for eta <= xi <= 2 eta
implies weak normal structure. Neither test decides the property when it
does not fire.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .closed_forms import lyj_bf
from .errors import ParameterDomainError
from .functionals import ConstantKind, ConstantQuery
from .norms import SpaceSpec
from .search import compute_constant


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


def strict_below(value: float, bound: float, tol: float = 0.0) -> Verdict:
    """Three-valued test of ``value < bound`` for values known only to +-tol."""
    if value + tol < bound:
        return Verdict.HOLDS
    if value - tol >= bound:
        return Verdict.FAILS
    return Verdict.INCONCLUSIVE


def super_reflexive_sufficient(lyj_value: float) -> bool:
    """True iff ``lyj_value < 2``."""
    return lyj_value < 2


def super_reflexive_verdict(lyj_value: float, tol: float) -> Verdict:
    return strict_below(lyj_value, 2.0, tol)


def _check_pos(xi, eta):
    if not (math.isfinite(xi) and math.isfinite(eta) and xi > 0 and eta > 0):
        raise ParameterDomainError(f"xi and eta must be positive finite reals, got {xi}, {eta}")


def wns_bound(xi: float, eta: float) -> float:
    """((xi + eta)^2 + (2 eta - xi)^2) / (2 (xi^2 + eta^2)), for eta <= xi <= 2 eta."""
    _check_pos(xi, eta)
    if not eta <= xi <= 2 * eta:
        raise ParameterDomainError(f"need eta <= xi <= 2 eta, got xi={xi}, eta={eta}")
    return ((xi + eta) ** 2 + (2 * eta - xi) ** 2) / (2 * (xi**2 + eta**2))


def _check_region(xi, eta):
    _check_pos(xi, eta)
    if not eta <= xi < 1.5 * eta:
        raise ParameterDomainError(f"need eta <= xi < 1.5 eta, got xi={xi}, eta={eta}")


def wns_lambda_threshold(xi: float, eta: float) -> float:
    """sqrt(4 xi eta / (6 xi eta - 3 eta^2)); below it L_YJ(R^2_lambda) < ``wns_bound``."""
    _check_region(xi, eta)
    return math.sqrt(4 * xi * eta / (6 * xi * eta - 3 * eta**2))


@dataclass(frozen=True)
class RegionQuery:
    xi: float
    eta: float
    lambda_from: float
    lambda_to: float
    samples: int

    def __post_init__(self):
        _check_region(self.xi, self.eta)
        if not (math.isfinite(self.lambda_from) and math.isfinite(self.lambda_to)):
            raise ParameterDomainError("lambda interval must be finite")
        if self.lambda_from < 1 or self.lambda_to < self.lambda_from:
            raise ParameterDomainError(
                f"need 1 <= lambda_from <= lambda_to, got [{self.lambda_from}, {self.lambda_to}]"
            )
        if int(self.samples) != self.samples or self.samples < 1:
            raise ParameterDomainError(f"samples must be a positive integer, got {self.samples}")

    def lambdas(self) -> list[float]:
        return [float(v) for v in np.linspace(self.lambda_from, self.lambda_to, int(self.samples))]


@dataclass(frozen=True)
class RegionRow:
    lam: float
    lyj: float
    bound: float
    holds: bool
    verdict: Verdict


def wns_region_scan(q: RegionQuery, search_cfg=None) -> list[RegionRow]:
    """Evaluate the weak-normal-structure condition along a lambda grid.

    By default L_YJ comes from the closed form and ``holds`` is exact. With
    ``search_cfg`` the numerical supremum is used instead; ``verdict`` then
    reports ``inconclusive`` when the value is within ``accept_tol`` of the
    bound, and ``holds`` is true only for a ``holds`` verdict.
    """
    bound = wns_bound(q.xi, q.eta)
    rows = []
    for lam in q.lambdas():
        if search_cfg is None:
            value = lyj_bf(q.xi, q.eta, lam)
            verdict = strict_below(value, bound)
        else:
            res = compute_constant(
                SpaceSpec.banas_fraczek(lam), ConstantQuery(ConstantKind.LYJ, xi=q.xi, eta=q.eta), search_cfg
            )
            value = res.value
            verdict = strict_below(value, bound, search_cfg.accept_tol)
        rows.append(RegionRow(lam, value, bound, verdict is Verdict.HOLDS, verdict))
    return rows
