"""The normal mapping v -> v - P_K[v] + F(P_K[v]), its Jacobian elements, and coercivity probes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import EvaluationError, VIProblem, as_vector, jacobian
from .projection import project, projection_jacobian_element

COERCIVE_EVIDENCE = "coercive-evidence"
VIOLATION_WITNESS = "violation-witness"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class NormalMapEval:
    v: np.ndarray
    z: np.ndarray  # projected point P_K[v]
    r: np.ndarray  # residual v - z + F(z)
    norm: float


def normal_map(p: VIProblem, v) -> NormalMapEval:
    v = as_vector(v, p.dim)
    z = project(p.set, v)
    r = v - z + p.F(z)
    return NormalMapEval(v=v, z=z, r=r, norm=float(np.linalg.norm(r)))


def normal_map_jacobian_element(p: VIProblem, v, boundary_rule="one") -> np.ndarray:
    """Element I - D + dF(P_K[v]) D of the normal map's generalized Jacobian,
    with D the diagonal projection-Jacobian element at v."""
    v = as_vector(v, p.dim)
    z = project(p.set, v)
    d = projection_jacobian_element(p.set, v, boundary_rule).d
    jf = jacobian(p, z)
    return np.eye(p.dim) - np.diag(d) + jf * d[np.newaxis, :]


@dataclass(frozen=True)
class RayProbe:
    direction: np.ndarray
    radii: np.ndarray
    norms: np.ndarray
    slope: float | None  # log-log fit past burn-in; None if non-finite values hit
    verdict: str


@dataclass(frozen=True)
class CoercivityProbe:
    rays: tuple[RayProbe, ...]
    verdict: str
    seed: int


def _ray_directions(m, rays, seed):
    dirs = []
    eye = np.eye(m)
    for i in range(m):
        dirs.append(eye[i])
        dirs.append(-eye[i])
    rng = np.random.default_rng(seed)
    while len(dirs) < rays:
        d = rng.standard_normal(m)
        n = np.linalg.norm(d)
        if n > 1e-12:
            dirs.append(d / n)
    return dirs


def coercivity_probe(p: VIProblem, rays=None, r0=1.0, growth=2.0, steps=12, seed=0,
                     burn_in=4) -> CoercivityProbe:
    """Sampled evidence for norm coercivity of the normal map along rays.

    Along each unit ray the residual norm is tabulated at radii r0 * growth^k.
    A ray whose final norm fails to reach twice its first value witnesses a
    violation; if every ray's log-log slope is at least 0.5 the probe reports
    coercive evidence; anything else is inconclusive.  Sampling evidence, not
    a proof.
    """
    m = p.dim
    if rays is None:
        rays = 2 * m
    if rays < 2 * m:
        raise ValueError("need at least 2m rays (the +-e_i directions)")
    if growth <= 1.0:
        raise ValueError("growth factor must exceed 1")
    if steps < 8:
        raise ValueError("need at least 8 radii per ray")
    radii = r0 * growth ** np.arange(steps)
    ray_reports = []
    for d in _ray_directions(m, rays, seed):
        norms = np.empty(steps)
        ok = True
        for k, r in enumerate(radii):
            try:
                norms[k] = normal_map(p, r * d).norm
            except EvaluationError:
                ok = False
                break
        if not ok or not np.all(np.isfinite(norms)):
            ray_reports.append(RayProbe(d, radii, norms, None, INCONCLUSIVE))
            continue
        if norms[-1] < 2.0 * norms[0]:
            ray_reports.append(RayProbe(d, radii, norms, None, VIOLATION_WITNESS))
            continue
        tail = slice(burn_in, None)
        with np.errstate(divide="ignore"):
            logs = np.log(norms[tail])
        if not np.all(np.isfinite(logs)):
            ray_reports.append(RayProbe(d, radii, norms, None, INCONCLUSIVE))
            continue
        slope = float(np.polyfit(np.log(radii[tail]), logs, 1)[0])
        verdict = COERCIVE_EVIDENCE if slope >= 0.5 else INCONCLUSIVE
        ray_reports.append(RayProbe(d, radii, norms, slope, verdict))
    if any(r.verdict == VIOLATION_WITNESS for r in ray_reports):
        verdict = VIOLATION_WITNESS
    elif all(r.verdict == COERCIVE_EVIDENCE for r in ray_reports):
        verdict = COERCIVE_EVIDENCE
    else:
        verdict = INCONCLUSIVE
    return CoercivityProbe(rays=tuple(ray_reports), verdict=verdict, seed=seed)
