"""Exact constant values known for the Banas-Fraczek plane and X_{lambda,p}.

The formulas are written out exactly as stated, with no algebraic
rearrangement, so they stay independent of the numerical search they are
used to check.
"""
from __future__ import annotations

import math

from .errors import (
    ConditionNotMetError,
    ParameterDomainError,
    UnsupportedBranchError,
    UnsupportedCombinationError,
)
from .functionals import ConstantKind, ConstantQuery
from .norms import SpaceKind, SpaceSpec


def _check_lambda(lam: float, strict: bool = False):
    if not math.isfinite(lam) or lam < 1 or (strict and lam == 1):
        bound = "> 1" if strict else ">= 1"
        raise ParameterDomainError(f"lambda must be {bound}, got {lam}")


def lyj_bf(xi: float, eta: float, lam: float) -> float:
    """1 + (2 xi eta / (xi^2 + eta^2)) (1 - 1/lambda^2)."""
    if not (xi > 0 and eta > 0):
        raise ParameterDomainError(f"xi and eta must be positive, got {xi}, {eta}")
    _check_lambda(lam)
    return 1 + (2 * xi * eta / (xi**2 + eta**2)) * (1 - 1 / lam**2)


def cnj_bf(lam: float) -> float:
    """von Neumann-Jordan constant 2 - 1/lambda^2."""
    _check_lambda(lam)
    return 2 - 1 / lam**2


# rounding slack for parameters sitting exactly on the boundary, e.g. p=2, lambda=sqrt(2)
CONDITION_SLACK = 1e-12


def cnjp_condition(p_exp: float, lam: float) -> bool:
    """lambda^2 (1 - 1/lambda^2)^(p/2) >= 1, where the C_NJ^(p) value is known."""
    return lam**2 * (1 - 1 / lam**2) ** (p_exp / 2) >= 1 - CONDITION_SLACK


def cnjp_bf(p_exp: float, lam: float) -> float:
    """Generalized von Neumann-Jordan constant 1 + (1 - 1/lambda^2)^(p/2).

    Only known for p >= 2 and lambda inside the region of ``cnjp_condition``.
    """
    if not (math.isfinite(p_exp) and p_exp >= 2):
        raise ParameterDomainError(f"p exponent must be >= 2, got {p_exp}")
    _check_lambda(lam)
    if not cnjp_condition(p_exp, lam):
        raise ConditionNotMetError(
            f"lambda^2 (1 - 1/lambda^2)^(p/2) < 1 for p={p_exp}, lambda={lam}; value unknown"
        )
    return 1 + (1 - 1 / lam**2) ** (p_exp / 2)


def james_type_gbf(t_mean: float, p_exp: float, lam: float) -> float:
    """James-type constant J_{X,t}(1) of X_{lambda,p} on the branch t >= p.

    2^(1 - 1/t) (1 + (1 - 1/lambda^p)^(t/p))^(1/t). The branches with t < p
    are refused: their published conditions contain a garbled exponent.
    """
    if not (math.isfinite(p_exp) and p_exp >= 1):
        raise ParameterDomainError(f"p exponent must be >= 1, got {p_exp}")
    if not (math.isfinite(t_mean) and t_mean > 0):
        raise ParameterDomainError(f"power-mean exponent must be positive, got {t_mean}")
    _check_lambda(lam, strict=True)
    if t_mean < p_exp:
        raise UnsupportedBranchError(f"only the branch t >= p is encoded (t={t_mean}, p={p_exp})")
    return 2 ** (1 - 1 / t_mean) * (1 + (1 - 1 / lam**p_exp) ** (t_mean / p_exp)) ** (1 / t_mean)


def closed_form(space: SpaceSpec, query: ConstantQuery) -> float:
    """Exact value for ``(space, query)`` or ``UnsupportedCombinationError``.

    Supported: LYJ, CNJ and CNJP on the Banas-Fraczek plane, and the
    James-type constant with tau = 1 on X_{lambda,p} (the Banas-Fraczek plane
    counts as p = 2).
    """
    kind = query.kind
    if space.kind is SpaceKind.BANAS_FRACZEK:
        if kind is ConstantKind.LYJ:
            return lyj_bf(query.xi, query.eta, space.lam)
        if kind is ConstantKind.CNJ:
            return cnj_bf(space.lam)
        if kind is ConstantKind.CNJP:
            return cnjp_bf(query.p_exp, space.lam)
    if kind is ConstantKind.JAMES_TYPE and query.tau == 1 and space.kind in (
        SpaceKind.BANAS_FRACZEK,
        SpaceKind.GENERALIZED_BF,
    ):
        p = 2.0 if space.kind is SpaceKind.BANAS_FRACZEK else space.p
        return james_type_gbf(query.t_mean, p, space.lam)
    raise UnsupportedCombinationError(f"no closed form for {kind.value} on {space}")
