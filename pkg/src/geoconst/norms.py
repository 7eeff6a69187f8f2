"""Normed planes: the Banas-Fraczek plane, its p-generalization and l_p planes.

All evaluators accept either scalars or numpy arrays for the coordinates so
the search code can evaluate whole lattices at once through the same formula
that the scalar API uses.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ParameterDomainError, PreconditionError, UnsupportedOperationError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, slots=True)
class Vec2:
    """A point (a, b) of the real plane."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise PreconditionError(f"non-finite vector ({self.a}, {self.b})")

    def __add__(self, other: Vec2) -> Vec2:
        return Vec2(self.a + other.a, self.b + other.b)

    def __sub__(self, other: Vec2) -> Vec2:
        return Vec2(self.a - other.a, self.b - other.b)

    def __neg__(self) -> Vec2:
        return Vec2(-self.a, -self.b)

    def __mul__(self, c: float) -> Vec2:
        return Vec2(c * self.a, c * self.b)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.a == 0.0 and self.b == 0.0


class SpaceKind(str, Enum):
    BANAS_FRACZEK = "bf"
    GENERALIZED_BF = "gbf"
    LP_PLANE = "lp"


@dataclass(frozen=True, slots=True)
class SpaceSpec:
    """Tagged description of a normed plane.

    ``lam`` is read for the two Banas-Fraczek kinds, ``p`` for the generalized
    kind and for l_p planes.
    """

    kind: SpaceKind
    lam: float | None = None
    p: float | None = None

    def __post_init__(self):
        kind = SpaceKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind in (SpaceKind.BANAS_FRACZEK, SpaceKind.GENERALIZED_BF):
            if self.lam is None or not math.isfinite(self.lam) or self.lam < 1.0:
                raise ParameterDomainError(f"lambda must be a finite real >= 1, got {self.lam}")
        if kind in (SpaceKind.GENERALIZED_BF, SpaceKind.LP_PLANE):
            if self.p is None or not math.isfinite(self.p) or self.p < 1.0:
                raise ParameterDomainError(f"p must be a finite real >= 1, got {self.p}")

    @classmethod
    def banas_fraczek(cls, lam: float) -> SpaceSpec:
        return cls(SpaceKind.BANAS_FRACZEK, lam=float(lam))

    @classmethod
    def generalized(cls, lam: float, p: float) -> SpaceSpec:
        return cls(SpaceKind.GENERALIZED_BF, lam=float(lam), p=float(p))

    @classmethod
    def lp(cls, p: float) -> SpaceSpec:
        return cls(SpaceKind.LP_PLANE, p=float(p))

    def to_text(self) -> str:
        if self.kind is SpaceKind.BANAS_FRACZEK:
            return f"bf:lambda={self.lam!r}"
        if self.kind is SpaceKind.GENERALIZED_BF:
            return f"gbf:lambda={self.lam!r},p={self.p!r}"
        return f"lp:p={self.p!r}"

    def __str__(self) -> str:
        return self.to_text()


_SPACE_RE = re.compile(r"^\s*(bf|gbf|lp)\s*:\s*(.*?)\s*$", re.IGNORECASE)
_REQUIRED_KEYS = {"bf": {"lambda"}, "gbf": {"lambda", "p"}, "lp": {"p"}}


def parse_space(text: str) -> SpaceSpec:
    """Parse ``bf:lambda=2``, ``gbf:lambda=2,p=3`` or ``lp:p=1.5``.

    Numbers use a decimal point regardless of locale.
    """
    m = _SPACE_RE.match(text)
    if not m:
        raise ParameterDomainError(f"cannot parse space {text!r}")
    tag = m.group(1).lower()
    params = {}
    for item in filter(None, (s.strip() for s in m.group(2).split(","))):
        key, sep, value = item.partition("=")
        key = key.strip().lower()
        if not sep or key in params:
            raise ParameterDomainError(f"bad parameter {item!r} in space {text!r}")
        try:
            params[key] = float(value.strip())
        except ValueError:
            raise ParameterDomainError(f"bad number {value!r} in space {text!r}") from None
    if set(params) != _REQUIRED_KEYS[tag]:
        raise ParameterDomainError(
            f"space {tag!r} needs parameters {sorted(_REQUIRED_KEYS[tag])}, got {sorted(params)}"
        )
    if tag == "bf":
        return SpaceSpec.banas_fraczek(params["lambda"])
    if tag == "gbf":
        return SpaceSpec.generalized(params["lambda"], params["p"])
    return SpaceSpec.lp(params["p"])


def _power_sum_norm(aa, bb, p: float):
    # factor out the larger coordinate so |.|^p cannot overflow
    m = np.maximum(aa, bb)
    safe = np.where(m > 0.0, m, 1.0)
    return np.where(m > 0.0, m * ((aa / safe) ** p + (bb / safe) ** p) ** (1.0 / p), 0.0)


def norm_xy(space: SpaceSpec, a, b):
    """Norm of the point(s) (a, b); broadcasts over numpy arrays."""
    kind = space.kind
    if kind is SpaceKind.BANAS_FRACZEK:
        return np.maximum(space.lam * np.abs(a), np.hypot(a, b))
    aa, bb = np.abs(a), np.abs(b)
    if kind is SpaceKind.GENERALIZED_BF:
        # p == 2 deliberately stays on the power formula, independent of hypot
        return np.maximum(space.lam * aa, _power_sum_norm(aa, bb, space.p))
    if space.p == 1.0:
        return aa + bb
    if space.p == 2.0:
        return np.hypot(a, b)
    return _power_sum_norm(aa, bb, space.p)


def norm(space: SpaceSpec, v: Vec2) -> float:
    """Return the norm of ``v`` in ``space``."""
    return float(norm_xy(space, v.a, v.b))


def unit_direction_xy(space: SpaceSpec, theta):
    """Coordinates of the unit vector along angle(s) ``theta``."""
    c, s = np.cos(theta), np.sin(theta)
    n = norm_xy(space, c, s)
    return c / n, s / n


def unit_vector(space: SpaceSpec, theta: float) -> Vec2:
    """Point of the unit sphere on the ray at angle ``theta`` (radians).

    Every ray from the origin meets a planar unit sphere exactly once, so
    this parametrization covers the whole sphere.
    """
    if not math.isfinite(theta):
        raise PreconditionError(f"non-finite angle {theta}")
    theta = math.fmod(theta, TWO_PI)
    a, b = unit_direction_xy(space, theta)
    return Vec2(float(a), float(b))


def sample_sphere(space: SpaceSpec, n: int) -> list[Vec2]:
    """``n`` unit vectors at the equally spaced angles 2*pi*k/n."""
    if int(n) != n or n < 4:
        raise ParameterDomainError(f"need at least 4 sample points, got {n}")
    n = int(n)
    xs, ys = unit_direction_xy(space, TWO_PI * np.arange(n) / n)
    return [Vec2(float(x), float(y)) for x, y in zip(xs, ys)]


def is_extreme_point(space: SpaceSpec, v: Vec2, tol: float = 1e-9) -> bool:
    """Whether ``v`` is an extreme point of the Banas-Fraczek unit ball.

    The extreme points are the arc of the Euclidean circle with
    |z1| <= 1/lambda; the flat caps at |z1| = 1/lambda contribute only their
    end points.
    """
    if space.kind is not SpaceKind.BANAS_FRACZEK:
        raise UnsupportedOperationError("extreme points are only implemented for the Banas-Fraczek plane")
    return abs(v.a * v.a + v.b * v.b - 1.0) <= tol and abs(v.a) <= 1.0 / space.lam + tol
