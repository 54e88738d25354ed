"""Damped semismooth Newton on the normal map with a residual-merit line search."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .certificates import hessian_block_convexity, pl_condition_check
from .model import EvaluationError, QuadraticGame, VIProblem
from .normal_map import normal_map, normal_map_jacobian_element
from .projection import project

SOLVED = "solved"
MAX_ITERS = "max-iters"
LINE_SEARCH_STALL = "line-search-stall"
FALLBACK_EXHAUSTED = "singular-jacobian-fallback-exhausted"

VI_SOLUTION = "vi-solution"
QUASI_NASH = "quasi-nash"
NASH = "nash"
NOT_APPLICABLE = "n/a"


@dataclass(frozen=True)
class SolveConfig:
    max_iters: int = 200
    tol: float = 1e-10
    armijo_slope: float = 1e-4
    backtrack: float = 0.5
    max_halvings: int = 40
    reg_floor: float = 1e-8
    boundary_rule: str = "one"
    start: np.ndarray | None = None

    def __post_init__(self):
        if self.max_iters < 1 or self.tol <= 0 or self.reg_floor <= 0:
            raise ValueError("tolerances must be positive and max_iters >= 1")


@dataclass(frozen=True)
class SolveResult:
    status: str
    v: np.ndarray
    x: np.ndarray  # solution candidate P_K[v]
    residual: float
    trace: tuple[float, ...]  # residual norm per accepted iterate, initial included
    steps: tuple[str, ...]  # newton | regularized | gradient | picard
    classification: str = NOT_APPLICABLE
    iterations: int = 0

    @property
    def solved(self) -> bool:
        return self.status == SOLVED


def default_start(p: VIProblem) -> np.ndarray:
    """Box midpoint; unbounded coordinates start at 0 (or the finite bound)."""
    lo, hi = p.set.lo, p.set.hi
    both = np.isfinite(lo) & np.isfinite(hi)
    mid = (np.where(both, lo, 0.0) + np.where(both, hi, 0.0)) / 2.0
    return project(p.set, np.where(both, mid, 0.0))


def solve(p: VIProblem, cfg: SolveConfig | None = None) -> SolveResult:
    """Drive the normal-map residual to zero from a single start point.

    Newton steps on a generalized-Jacobian element, Levenberg-regularized
    normal equations when the element is numerically singular, merit-gradient
    and fixed-point fallbacks when the Newton direction is not a descent
    direction for theta(v) = 1/2 ||r(v)||^2.
    """
    cfg = cfg or SolveConfig()
    v = default_start(p) if cfg.start is None else np.array(cfg.start, dtype=float)
    try:
        ev = normal_map(p, v)
    except EvaluationError:
        raise
    trace = [ev.norm]
    steps = []
    status = MAX_ITERS
    for _ in range(cfg.max_iters):
        if ev.norm <= cfg.tol:
            status = SOLVED
            break
        j = normal_map_jacobian_element(p, v, cfg.boundary_rule)
        r = ev.r
        grad = j.T @ r  # gradient of the merit function
        sv = np.linalg.svd(j, compute_uv=False)
        kind = "newton"
        if sv[-1] < cfg.reg_floor * max(sv[0], 1.0):
            kind = "regularized"
            d = np.linalg.solve(j.T @ j + cfg.reg_floor * np.eye(p.dim), -grad)
        else:
            d = np.linalg.solve(j, -r)
        slope = float(grad @ d)
        if slope >= 0.0 or not np.all(np.isfinite(d)):
            kind = "gradient"
            d = -grad
            slope = -float(grad @ grad)
        if -slope <= 1e-14 * (1.0 + ev.norm ** 2):
            # Flat merit region (e.g. constant F inside the box): fall back to
            # the fixed-point direction v - r, which targets P_K[v] - F(P_K[v]).
            kind = "picard"
            d = -r
            slope = None
        accepted = None
        t = 1.0
        theta0 = 0.5 * ev.norm ** 2
        for _ in range(cfg.max_halvings + 1):
            try:
                trial = normal_map(p, v + t * d)
            except EvaluationError:
                t *= cfg.backtrack
                continue
            theta = 0.5 * trial.norm ** 2
            if slope is not None:
                ok = theta <= theta0 + cfg.armijo_slope * t * slope
            else:
                ok = theta <= (1.0 - cfg.armijo_slope * t) * theta0
            if ok and theta < theta0:
                accepted = (v + t * d, trial)
                break
            t *= cfg.backtrack
        if accepted is None:
            if kind in ("gradient", "picard") and np.linalg.norm(grad) <= 1e-12 * (1.0 + ev.norm):
                status = FALLBACK_EXHAUSTED
            else:
                status = LINE_SEARCH_STALL
            break
        v, ev = accepted
        trace.append(ev.norm)
        steps.append(kind)
    if ev.norm <= cfg.tol:
        status = SOLVED
    x = project(p.set, v)
    return SolveResult(status=status, v=v, x=x, residual=ev.norm, trace=tuple(trace),
                       steps=tuple(steps), iterations=len(steps))


def classify(p: VIProblem, g: QuadraticGame | None, res: SolveResult,
             pl_samples=200, seed=0) -> str:
    """vi-solution for plain VIs; for games, quasi-nash upgraded to nash when
    the block-convexity gate or the gap-domination check passes."""
    if not res.solved:
        return NOT_APPLICABLE
    g = g if g is not None else p.game
    if g is None:
        return VI_SOLUTION
    if hessian_block_convexity(g).verdict == "pass":
        return NASH
    try:
        if pl_condition_check(g, res.x, samples=pl_samples, seed=seed).verdict == "pass":
            return NASH
    except ValueError:
        pass
    return QUASI_NASH


def solve_and_classify(p: VIProblem, cfg: SolveConfig | None = None,
                       g: QuadraticGame | None = None) -> SolveResult:
    res = solve(p, cfg)
    if res.solved:
        res = replace(res, classification=classify(p, g, res))
    return res


def multistart(p: VIProblem, cfg: SolveConfig | None = None, starts=8, seed=0,
               radius=10.0) -> list[SolveResult]:
    """Seeded starts across K plus the default start, solved independently;
    solved results deduplicated by solution proximity and sorted by residual
    then lexicographically by solution."""
    if starts < 1:
        raise ValueError("need at least one start")
    cfg = cfg or SolveConfig()
    rng = np.random.default_rng(seed)
    lo = np.where(np.isfinite(p.set.lo), p.set.lo, -radius)
    hi = np.maximum(np.where(np.isfinite(p.set.hi), p.set.hi, radius), lo)
    start_points = [default_start(p) if cfg.start is None else np.asarray(cfg.start, float)]
    while len(start_points) < starts:
        start_points.append(np.clip(rng.uniform(lo, hi), p.set.lo, p.set.hi))
    results = [solve_and_classify(p, replace(cfg, start=s)) for s in start_points]
    deduped = []
    for res in results:
        if res.solved and any(other.solved and np.linalg.norm(other.x - res.x) <= 1e-6
                              for other in deduped):
            continue
        deduped.append(res)
    deduped.sort(key=lambda r: (not r.solved, r.residual, tuple(r.x)))
    return deduped
