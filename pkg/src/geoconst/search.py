"""Numerical suprema of the constant functionals on a normed plane.

The search runs in two stages. A lattice scan covers the reduced domain,
then a derivative-free pattern search refines the best lattice point.

Domain reduction
----------------
LYJ, CNJ and CNJP are invariant under (x, y) -> (c x, c y), and the
James(lambda, mu) expression is positively homogeneous of degree one. For
these constants the supremum over all pairs (or over ball x ball) is
therefore attained with max(|x|, |y|) = 1. Such a pair is written as
``(u(theta_x), t u(theta_y))`` (branch ``scale-y``) or
``(t u(theta_x), u(theta_y))`` (branch ``scale-x``) with ``t`` in [0, 1] and
``u`` the unit-sphere parametrization. Both branches are always searched.
The sphere-only constants (LYJ', J and the James-type constant) fix t = 1.

Determinism
-----------
Only theta_x in [0, pi) is scanned when the angle count is even, since
every functional is even under (x, y) -> (-x, -y).

The lattice is split into slices, one per (branch, t) pair. Every slice is
evaluated on arrays of the same shape no matter how many workers run, and
the global reduction takes the largest value with ties broken by the
lexicographically smallest ``(theta_x index, theta_y index, t index,
branch)``. Results are bit-identical for any worker count.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .closed_forms import closed_form
from .errors import (
    ConditionNotMetError,
    NumericFailureError,
    ParameterDomainError,
    UnsupportedBranchError,
    UnsupportedCombinationError,
)
from .functionals import ConstantKind, ConstantQuery, evaluate_xy
from .norms import TWO_PI, SpaceSpec, Vec2, unit_direction_xy

SCALED_KINDS = frozenset(
    {ConstantKind.LYJ, ConstantKind.CNJ, ConstantKind.CNJP, ConstantKind.JAMES_LAMBDA_MU}
)
# refinement stops after this many accepted moves even if halvings remain
MAX_MOVES = 20_000


class Branch(str, Enum):
    SCALE_Y = "scale-y"
    SCALE_X = "scale-x"


_BRANCH_ORDER = {Branch.SCALE_Y: 0, Branch.SCALE_X: 1}


@dataclass(frozen=True)
class SearchConfig:
    """Resolution and refinement settings for ``compute_constant``.

    ``initial_step`` of None means one lattice cell in each coordinate.
    ``workers`` of 0 means one per CPU. Lattice ties always go to the
    lexicographically smallest (theta_x, theta_y, t).
    """

    angle_grid_n: int = 720
    scale_grid_n: int = 65
    refine_iters: int = 60
    refine_shrink: float = 0.5
    initial_step: float | None = None
    accept_tol: float = 1e-3
    workers: int = 1

    def __post_init__(self):
        if self.angle_grid_n < 1 or self.scale_grid_n < 1:
            raise ParameterDomainError("grid sizes must be >= 1")
        if self.refine_iters < 0:
            raise ParameterDomainError("refine_iters must be >= 0")
        if not 0 < self.refine_shrink < 1:
            raise ParameterDomainError(f"refine_shrink must lie in (0, 1), got {self.refine_shrink}")
        if self.initial_step is not None and not self.initial_step > 0:
            raise ParameterDomainError(f"initial_step must be positive, got {self.initial_step}")
        if not self.accept_tol >= 0:
            raise ParameterDomainError(f"accept_tol must be >= 0, got {self.accept_tol}")
        if self.workers < 0:
            raise ParameterDomainError(f"workers must be >= 0, got {self.workers}")

    def resolved_workers(self) -> int:
        return self.workers or os.cpu_count() or 1


@dataclass(frozen=True)
class Witness:
    """A point of the reduced search domain together with its value.

    ``x`` and ``y`` are unit vectors; the pair actually evaluated is
    ``(x, t*y)`` on branch scale-y and ``(t*x, y)`` on branch scale-x.
    """

    x: Vec2
    y: Vec2
    t: float
    theta_x: float
    theta_y: float
    branch: Branch
    value: float

    def pair(self) -> tuple[Vec2, Vec2]:
        if self.branch is Branch.SCALE_Y:
            return self.x, self.t * self.y
        return self.t * self.x, self.y


@dataclass(frozen=True)
class ComputationResult:
    query: ConstantQuery
    space: SpaceSpec
    value: float
    witness: Witness
    closed_form: float | None
    abs_diff: float | None
    evaluations: int
    grid_value: float
    agrees: bool | None = field(default=None)

    @property
    def error_estimate(self) -> float:
        """Gain of the refinement over the best lattice value.

        A heuristic indicator of lattice coarseness, not a bound on the
        distance to the true supremum.
        """
        return self.value - self.grid_value


def _uses_scale(query: ConstantQuery) -> bool:
    return query.kind in SCALED_KINDS


def _evaluate(space, query, theta_x, theta_y, t, branch):
    ux1, ux2 = unit_direction_xy(space, theta_x)
    uy1, uy2 = unit_direction_xy(space, theta_y)
    if branch is Branch.SCALE_Y:
        uy1, uy2 = t * uy1, t * uy2
    else:
        ux1, ux2 = t * ux1, t * ux2
    return evaluate_xy(space, query, ux1, ux2, uy1, uy2)


def _raise_nonfinite(space, query, values, theta_x, theta_y, t, branch):
    bad = np.argwhere(~np.isfinite(values))[0]
    tx = np.broadcast_to(theta_x, values.shape)[tuple(bad)]
    ty = np.broadcast_to(theta_y, values.shape)[tuple(bad)]
    tt = np.broadcast_to(t, values.shape)[tuple(bad)]
    raise NumericFailureError(
        f"{query.kind.value} on {space} is not finite at theta_x={tx!r}, theta_y={ty!r}, "
        f"t={tt!r}, branch={branch.value}"
    )


def make_witness(
    space: SpaceSpec,
    query: ConstantQuery,
    theta_x: float,
    theta_y: float,
    t: float = 1.0,
    branch: Branch = Branch.SCALE_Y,
) -> Witness:
    """Build and evaluate a witness from its angle coordinates."""
    if not 0.0 <= t <= 1.0:
        raise ParameterDomainError(f"t must lie in [0, 1], got {t}")
    branch = Branch(branch)
    value = _evaluate(space, query, np.float64(theta_x), np.float64(theta_y), t, branch)
    if not np.isfinite(value):
        _raise_nonfinite(space, query, np.atleast_1d(value), theta_x, theta_y, t, branch)
    x1, x2 = unit_direction_xy(space, theta_x)
    y1, y2 = unit_direction_xy(space, theta_y)
    return Witness(Vec2(float(x1), float(x2)), Vec2(float(y1), float(y2)), float(t), theta_x, theta_y, branch, float(value))


def _grid(space: SpaceSpec, query: ConstantQuery, cfg: SearchConfig):
    n = cfg.angle_grid_n
    thetas = TWO_PI * np.arange(n) / n
    ux1, ux2 = unit_direction_xy(space, thetas)
    if _uses_scale(query):
        ts = np.linspace(0.0, 1.0, cfg.scale_grid_n) if cfg.scale_grid_n > 1 else np.array([1.0])
        slices = [(b, k) for b in (Branch.SCALE_Y, Branch.SCALE_X) for k in range(len(ts))]
    else:
        ts = np.array([1.0])
        slices = [(Branch.SCALE_Y, 0)]

    # every functional is even under (x, y) -> (-x, -y); with n even the
    # lattice is closed under that map, so theta_x in [0, pi) suffices
    nx = n // 2 if n % 2 == 0 else n
    col1, col2 = ux1[:nx, None], ux2[:nx, None]
    row1, row2 = ux1[None, :], ux2[None, :]

    def run(sl):
        branch, k = sl
        t = ts[k]
        if branch is Branch.SCALE_Y:
            v = evaluate_xy(space, query, col1, col2, t * row1, t * row2)
        else:
            v = evaluate_xy(space, query, t * col1, t * col2, row1, row2)
        v = np.broadcast_to(v, (nx, n))
        if not np.all(np.isfinite(v)):
            _raise_nonfinite(space, query, v, thetas[:nx, None], thetas[None, :], t, branch)
        flat = int(np.argmax(v))  # first occurrence: smallest (i, j)
        i, j = divmod(flat, n)
        return float(v[i, j]), (i, j, k, _BRANCH_ORDER[branch]), branch

    workers = cfg.resolved_workers()
    if workers > 1 and len(slices) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, slices))
    else:
        results = [run(sl) for sl in slices]

    value, key, branch = min(results, key=lambda r: (-r[0], r[1]))
    i, j, k, _ = key
    witness = Witness(
        Vec2(float(ux1[i]), float(ux2[i])),
        Vec2(float(ux1[j]), float(ux2[j])),
        float(ts[k]),
        float(thetas[i]),
        float(thetas[j]),
        branch,
        value,
    )
    return witness, len(slices) * nx * n, ts


def _directions(dim: int) -> np.ndarray:
    dirs = [d for d in itertools.product((-1.0, 0.0, 1.0), repeat=dim) if any(d)]
    return np.array(dirs)


def _refine(space, query, start: Witness, cfg: SearchConfig, angle_step: float, t_step: float):
    scaled = _uses_scale(query)
    dim = 3 if scaled else 2
    dirs = _directions(dim)
    steps = np.array([angle_step, angle_step, t_step][:dim])
    z = np.array([start.theta_x, start.theta_y, start.t][:dim])
    best = start.value
    halvings = moves = evals = 0
    while halvings < cfg.refine_iters and moves < MAX_MOVES:
        cand = z + dirs * steps
        if scaled:
            cand[:, 2] = np.clip(cand[:, 2], 0.0, 1.0)
            t = cand[:, 2]
        else:
            t = 1.0
        vals = _evaluate(space, query, cand[:, 0], cand[:, 1], t, start.branch)
        evals += len(cand)
        if not np.all(np.isfinite(vals)):
            _raise_nonfinite(space, query, vals, cand[:, 0], cand[:, 1], t, start.branch)
        j = int(np.argmax(vals))
        if vals[j] > best:
            z, best = cand[j], float(vals[j])
            moves += 1
        else:
            steps = steps * cfg.refine_shrink
            halvings += 1
    if moves == 0:
        return start, evals
    t_final = float(z[2]) if scaled else start.t
    x1, x2 = unit_direction_xy(space, z[0])
    y1, y2 = unit_direction_xy(space, z[1])
    w = Witness(
        Vec2(float(x1), float(x2)), Vec2(float(y1), float(y2)), t_final, float(z[0]), float(z[1]), start.branch, best
    )
    return w, evals


def _steps(cfg: SearchConfig) -> tuple[float, float]:
    if cfg.initial_step is not None:
        return cfg.initial_step, min(cfg.initial_step, 1.0)
    t_cell = 1.0 / (cfg.scale_grid_n - 1) if cfg.scale_grid_n > 1 else 1.0
    return TWO_PI / cfg.angle_grid_n, t_cell


def refine_local(
    space: SpaceSpec, query: ConstantQuery, start: Witness, cfg: SearchConfig | None = None
) -> Witness:
    """Pattern-search ascent from ``start`` on its branch.

    All sign combinations of the coordinate steps are probed at once; the
    best strictly improving probe is taken, otherwise the step shrinks by
    ``refine_shrink``. Stops after ``refine_iters`` shrinks. The returned
    value is never below the start value.
    """
    cfg = cfg or SearchConfig()
    return _refine(space, query, start, cfg, *_steps(cfg))[0]


def _lookup_closed_form(space, query):
    try:
        return closed_form(space, query)
    except (UnsupportedCombinationError, ConditionNotMetError, UnsupportedBranchError):
        return None


def compute_constant(
    space: SpaceSpec, query: ConstantQuery, cfg: SearchConfig | None = None
) -> ComputationResult:
    """Numerical supremum of ``query`` on ``space``.

    The closed form, when one is known, is attached for comparison.
    """
    cfg = cfg or SearchConfig()
    cf = _lookup_closed_form(space, query)
    if query.kind is ConstantKind.JAMES_TYPE and query.tau == 0:
        # |x + 0y| = |x - 0y| = 1 for every unit x
        w = make_witness(space, query, 0.0, 0.0)
        w = Witness(w.x, w.y, w.t, w.theta_x, w.theta_y, w.branch, 1.0)
        return ComputationResult(query, space, 1.0, w, cf, None if cf is None else abs(1.0 - cf), 0, 1.0)

    start, evals, _ = _grid(space, query, cfg)
    refined, more = _refine(space, query, start, cfg, *_steps(cfg))
    value = refined.value
    abs_diff = None if cf is None else abs(value - cf)
    return ComputationResult(query, space, value, refined, cf, abs_diff, evals + more, start.value)


def verify_against_closed_form(
    space: SpaceSpec, query: ConstantQuery, cfg: SearchConfig | None = None
) -> ComputationResult:
    """Search, then compare with the closed form at ``cfg.accept_tol``.

    Raises whatever ``closed_form`` raises when no exact value is known.
    """
    cfg = cfg or SearchConfig()
    cf = closed_form(space, query)
    res = compute_constant(space, query, cfg)
    abs_diff = abs(res.value - cf)
    return ComputationResult(
        res.query,
        res.space,
        res.value,
        res.witness,
        cf,
        abs_diff,
        res.evaluations,
        res.grid_value,
        agrees=abs_diff <= cfg.accept_tol,
    )
