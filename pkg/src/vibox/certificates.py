"""Existence-condition checkers producing CertificateReports.

Each checker reifies one sufficient condition for solvability (P-matrix
variants, P-function searches, growth fits, the Upsilon test for games, the
scaled maximal-rank search, and the PL gap condition).  Conditions that
quantify over all of K are verified on seeded sample sets: a fail is
conclusive (witness-backed), a pass is sampled evidence only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .model import (BoxSet, ConfigurationError, QuadraticGame, VIProblem, as_vector,
                    game_to_vi, jacobian)
from .projection import convg_hull_sample, project

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

SAMPLED_NOTE = "sampled surrogate, not a proof"

MINOR_BUDGET_DIM = 20


class BudgetError(ValueError):
    """Raised when an exhaustive enumeration would exceed its budget."""


@dataclass(frozen=True)
class CertificateReport:
    condition: str
    verdict: str
    margin: float | None
    witness: dict | None
    seed: int | None
    budget: dict
    notes: str
    metrics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "verdict": self.verdict,
            "margin": self.margin,
            "witness": self.witness,
            "seed": self.seed,
            "budget": self.budget,
            "notes": self.notes,
            "metrics": self.metrics,
        }


@dataclass(frozen=True)
class SampleSet:
    """Seeded points drawn from a box; unbounded coordinates are drawn within
    a finite radius and every point lies in K exactly."""

    points: np.ndarray  # (count, m)
    seed: int
    radius: float

    @property
    def count(self) -> int:
        return self.points.shape[0]


def draw_samples(box: BoxSet, count, seed, radius=10.0) -> SampleSet:
    rng = np.random.default_rng(seed)
    lo = np.where(np.isfinite(box.lo), box.lo, -radius)
    hi = np.where(np.isfinite(box.hi), box.hi, radius)
    hi = np.maximum(hi, lo)  # half-bounded coordinate with lo > radius
    pts = rng.uniform(lo, hi, size=(count, box.dim))
    pts = np.clip(pts, box.lo, box.hi)
    return SampleSet(points=pts, seed=seed, radius=radius)


def boundary_sample_set(box: BoxSet, count, seed, radius=10.0) -> SampleSet:
    """Interior draws plus, per finite bound, points pinned exactly to that
    bound and points pushed strictly outside it."""
    base = draw_samples(box, count, seed, radius).points
    extra = []
    for i in range(box.dim):
        for bound, push in ((box.lo[i], -1.0), (box.hi[i], 1.0)):
            if not np.isfinite(bound):
                continue
            for k in range(min(3, count)):
                on = base[k].copy()
                on[i] = bound
                extra.append(on)
                out = base[k].copy()
                out[i] = bound + push
                extra.append(out)
    pts = np.vstack([base, np.array(extra)]) if extra else base
    return SampleSet(points=pts, seed=seed, radius=radius)


def principal_minor_det(a) -> float:
    """Determinant with exact cofactor expansion for orders up to 3.

    Keeps small integer-entry minors exact in floating point; larger
    orders fall back to the LU-based determinant.
    """
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    if n == 2:
        return float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    if n == 3:
        return float(a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
                     - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
                     + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0]))
    return float(np.linalg.det(a))


def principal_index_sets(m):
    """Nonempty index subsets ordered by size then lexicographically."""
    for r in range(1, m + 1):
        yield from combinations(range(m), r)


def _minor_scan(a):
    """(min minor, first nonpositive subset or None) over all principal minors."""
    m = a.shape[0]
    min_minor = np.inf
    first_bad = None
    for idx in principal_index_sets(m):
        d = principal_minor_det(a[np.ix_(idx, idx)])
        if d < min_minor:
            min_minor = d
        if d <= 0.0 and first_bad is None:
            first_bad = idx
    return min_minor, first_bad


def pmatrix_minors(a, condition="pmatrix") -> CertificateReport:
    """Exact P-matrix test: every principal minor must be positive."""
    a = np.asarray(a, dtype=float)
    m = a.shape[0]
    if m > MINOR_BUDGET_DIM:
        raise BudgetError(
            f"minor enumeration over 2^{m}-1 subsets exceeds budget; use pmatrix_oracle"
        )
    min_minor, first_bad = _minor_scan(a)
    budget = {"minors": 2 ** m - 1}
    if first_bad is not None:
        witness = {
            "index_set": list(first_bad),
            "minor": principal_minor_det(a[np.ix_(first_bad, first_bad)]),
        }
        return CertificateReport(condition, FAIL, float(min_minor), witness, None, budget,
                                 "nonpositive principal minor found")
    return CertificateReport(condition, PASS, float(min_minor), None, None, budget,
                             "all principal minors positive (exact enumeration)")


def pmatrix_oracle(a, samples=100000, seed=0) -> CertificateReport:
    """Brute-force cross-check of the P-matrix property via the sign-reversal
    characterization: A is a P-matrix iff max_i w_i (A w)_i > 0 for all w != 0."""
    a = np.asarray(a, dtype=float)
    m = a.shape[0]
    if samples < 1000:
        raise ValueError("oracle needs at least 1000 samples")
    rng = np.random.default_rng(seed)
    w = rng.standard_normal((samples, m))
    norms = np.linalg.norm(w, axis=1)
    w = w[norms > 1e-12] / norms[norms > 1e-12, np.newaxis]
    w = np.vstack([np.eye(m), -np.eye(m), w])
    vals = np.max(w * (w @ a.T), axis=1)
    k = int(np.argmin(vals))
    margin = float(vals[k])
    budget = {"samples": samples}
    if margin <= 0.0:
        witness = {"w": w[k].tolist(), "max_component": margin}
        return CertificateReport("pmatrix-oracle", FAIL, margin, witness, seed, budget,
                                 "sign-reversing direction found")
    return CertificateReport("pmatrix-oracle", INCONCLUSIVE, margin, None, seed, budget,
                             f"no violating direction among samples; {SAMPLED_NOTE}")


def uniform_pmatrix_sampled(p: VIProblem, samples: SampleSet, mixed_rows=None,
                            eta_floor=1e-10) -> CertificateReport:
    """Sampled test of the uniform P-matrix condition on the Jacobian.

    Mixed-row matrices take row i from the Jacobian at the i-th point of a
    tuple of sampled points; each must be a P-matrix with margin at least
    eta_floor.  The all-same tuples (one per sample) are always included.
    """
    if samples.count == 0:
        raise ValueError("sample set is empty")
    n, m = samples.count, p.dim
    if mixed_rows is None:
        mixed_rows = 2 * n
    if mixed_rows < n:
        raise ValueError("mixed_rows must be at least the sample count")
    jacs = np.array([jacobian(p, x) for x in samples.points])
    rng = np.random.default_rng(samples.seed)
    tuples = [np.full(m, k) for k in range(n)]
    while len(tuples) < mixed_rows:
        tuples.append(rng.integers(0, n, size=m))
    budget = {"samples": n, "mixed_rows": len(tuples)}
    min_margin = np.inf
    min_tuple = None
    for tup in tuples:
        a_mix = np.array([jacs[tup[i]][i, :] for i in range(m)])
        rep = pmatrix_minors(a_mix)
        if rep.verdict == FAIL:
            witness = {"tuple": [int(t) for t in tup],
                       "points": [samples.points[t].tolist() for t in tup],
                       "index_set": rep.witness["index_set"],
                       "minor": rep.witness["minor"]}
            return CertificateReport("uniform-pmatrix", FAIL, rep.margin, witness,
                                     samples.seed, budget,
                                     "mixed-row matrix is not a P-matrix")
        if rep.margin < min_margin:
            min_margin = rep.margin
            min_tuple = tup
    if min_margin < eta_floor:
        witness = {"tuple": [int(t) for t in min_tuple], "min_minor": float(min_margin),
                   "eta_floor": eta_floor}
        return CertificateReport("uniform-pmatrix", FAIL, float(min_margin), witness,
                                 samples.seed, budget,
                                 "P-matrix margin below the uniform floor")
    return CertificateReport("uniform-pmatrix", PASS, float(min_margin), None, samples.seed,
                             budget, f"all sampled mixed-row matrices pass; {SAMPLED_NOTE}")


def principal_submatrix_sigma_sweep(p: VIProblem, samples: SampleSet,
                                    threshold=0.0) -> CertificateReport:
    """Minimum singular value over all principal submatrices of the Jacobian
    at every sampled point."""
    m = p.dim
    if m > MINOR_BUDGET_DIM:
        raise BudgetError("submatrix enumeration exceeds budget for m > 20")
    margin = np.inf
    arg = None
    for k, x in enumerate(samples.points):
        a = jacobian(p, x)
        for idx in principal_index_sets(m):
            s = float(np.linalg.svd(a[np.ix_(idx, idx)], compute_uv=False)[-1])
            if s < margin:
                margin = s
                arg = (k, idx)
    budget = {"samples": samples.count, "submatrices": 2 ** m - 1}
    metrics = {"argmin_point": samples.points[arg[0]].tolist(),
               "argmin_index_set": list(arg[1])}
    if margin > threshold:
        return CertificateReport("sigma-sweep", PASS, float(margin), None, samples.seed,
                                 budget, f"all sampled submatrix sigma_min above threshold; "
                                 f"{SAMPLED_NOTE}", metrics)
    witness = {"point": samples.points[arg[0]].tolist(), "index_set": list(arg[1]),
               "sigma_min": float(margin)}
    return CertificateReport("sigma-sweep", FAIL, float(margin), witness, samples.seed,
                             budget, "rank-deficient principal submatrix at a sample",
                             metrics)


def _direction_grid(m):
    """Coordinate and pairwise-difference unit directions, coordinate ones first."""
    eye = np.eye(m)
    dirs = [eye[i] for i in range(m)]
    for i, j in combinations(range(m), 2):
        dirs.append((eye[i] - eye[j]) / np.sqrt(2.0))
        dirs.append((eye[i] + eye[j]) / np.sqrt(2.0))
    return dirs


def _pair_stream(box: BoxSet, pairs, seed, radius):
    """Deterministic pair generator: direction-grid pairs around base points
    first, then random pairs; coincident pairs are skipped."""
    rng = np.random.default_rng(seed)
    both = np.isfinite(box.lo) & np.isfinite(box.hi)
    mid = np.where(both, (np.where(both, box.lo, 0.0) + np.where(both, box.hi, 0.0)) / 2.0, 0.0)
    bases = [project(box, mid)]
    bases.extend(draw_samples(box, 3, seed + 1, radius).points)
    out = []
    for x in bases:
        for d in _direction_grid(box.dim):
            y = project(box, x + d)
            if np.linalg.norm(y - x) >= 1e-12:
                out.append((x, y))
            if len(out) >= pairs:
                return out
    while len(out) < pairs:
        x = project(box, rng.uniform(-radius, radius, box.dim) if not box.is_bounded
                    else rng.uniform(box.lo, box.hi))
        y = project(box, rng.uniform(-radius, radius, box.dim) if not box.is_bounded
                    else rng.uniform(box.lo, box.hi))
        if np.linalg.norm(y - x) < 1e-12:
            continue
        out.append((x, y))
    return out


def uniform_pfunction_search(p: VIProblem, pairs=200, seed=0, radius=10.0) -> CertificateReport:
    """Search for violations of the uniform P-function inequality
    max_j [F(x)-F(y)]_j [x-y]_j >= mu ||x-y||^2 over sampled pairs in K."""
    if pairs < 100:
        raise ValueError("need at least 100 pairs")
    return _pfunction_search(p, None, pairs, seed, radius, "pfunction")


def block_pfunction_search(p: VIProblem, blocks=None, pairs=200, seed=0,
                           radius=10.0) -> CertificateReport:
    """Block variant: the max runs over block inner products <[F(x)-F(y)]_j, [x-y]_j>."""
    if blocks is None:
        blocks = p.set.blocks or (p.dim,)
    if sum(blocks) != p.dim:
        raise ConfigurationError("block partition inconsistent with the dimension")
    return _pfunction_search(p, tuple(blocks), pairs, seed, radius, "block-pfunction")


def _block_slices(blocks):
    slices = []
    start = 0
    for b in blocks:
        slices.append(slice(start, start + b))
        start += b
    return slices


def _pfunction_search(p, blocks, pairs, seed, radius, condition):
    slices = _block_slices(blocks) if blocks is not None else None
    min_rho = np.inf
    first_violation = None
    arg = None
    for x, y in _pair_stream(p.set, pairs, seed, radius):
        fx, fy = p.F(x), p.F(y)
        d = x - y
        if slices is None:
            top = float(np.max((fx - fy) * d))
        else:
            top = float(max(np.dot((fx - fy)[s], d[s]) for s in slices))
        rho = top / float(d @ d)
        if rho < min_rho:
            min_rho = rho
            arg = (x, y)
        if rho <= 0.0 and first_violation is None:
            first_violation = {"x": x.tolist(), "y": y.tolist(), "rho": rho}
    budget = {"pairs": pairs}
    if first_violation is not None:
        return CertificateReport(condition, FAIL, float(min_rho), first_violation, seed,
                                 budget, "pair violating the P-function inequality",
                                 {"min_rho_pair": {"x": arg[0].tolist(), "y": arg[1].tolist()}})
    return CertificateReport(condition, INCONCLUSIVE, float(min_rho), None, seed, budget,
                             f"no violating pair; empirical mu = min rho; {SAMPLED_NOTE}")


def growth_l0lp_fit(p: VIProblem, pairs=200, p_exponent=1.0, seed=0,
                    radius=10.0) -> CertificateReport:
    """Least-max fit of ||F(x)-F(y)|| <= L0 + Lp ||x-y||^p over sampled pairs.

    Lp is the worst ratio over pairs with separation >= 1; L0 covers the
    residual of the shorter pairs.  Always passes; margin is the fitted Lp.
    """
    if p_exponent < 1.0:
        raise ValueError("growth exponent must be at least 1")
    rng = np.random.default_rng(seed)
    box = p.set
    bases = draw_samples(box, max(2, pairs // 40), seed, radius).points
    dirs = _direction_grid(box.dim)
    while len(dirs) < 12:
        d = rng.standard_normal(box.dim)
        n = np.linalg.norm(d)
        if n > 1e-12:
            dirs.append(d / n)
    radii = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0)
    pair_list = []
    for x in bases:
        for d in dirs:
            for r in radii:
                y = project(box, x + r * d)
                if np.linalg.norm(y - x) >= 1e-12:
                    pair_list.append((x, y))
                if len(pair_list) >= pairs:
                    break
            if len(pair_list) >= pairs:
                break
        if len(pair_list) >= pairs:
            break
    long_ratios = []
    short = []
    for x, y in pair_list:
        sep = float(np.linalg.norm(y - x))
        df = float(np.linalg.norm(p.F(x) - p.F(y)))
        if sep >= 1.0:
            long_ratios.append(df / sep ** p_exponent)
        else:
            short.append((df, sep))
    if long_ratios:
        lp = max(long_ratios)
    else:
        lp = max((df / sep ** p_exponent for df, sep in short), default=0.0)
    l0 = max((df - lp * sep ** p_exponent for df, sep in short), default=0.0)
    l0 = 0.0 if l0 < 1e-12 * max(1.0, lp) else l0  # float noise below fit resolution
    covered = sum(1 for x, y in pair_list
                  if np.linalg.norm(p.F(x) - p.F(y))
                  <= l0 + lp * np.linalg.norm(y - x) ** p_exponent + 1e-12)
    metrics = {"L0": float(l0), "Lp": float(lp), "p": float(p_exponent),
               "coverage": covered / max(1, len(pair_list))}
    return CertificateReport("growth", PASS, float(lp), None, seed,
                             {"pairs": len(pair_list)},
                             f"fitted growth envelope on sampled pairs; {SAMPLED_NOTE}",
                             metrics)


def _uniform_blocks(g: QuadraticGame):
    sizes = set(g.block_sizes)
    if len(sizes) != 1:
        raise ConfigurationError(
            "Upsilon analysis requires all player blocks of equal dimension")
    return g.block_sizes[0]


def upsilon_build(g: QuadraticGame, samples: SampleSet | None = None) -> np.ndarray:
    """The N x N comparison matrix: diagonal inf lambda_min of own blocks,
    off-diagonal minus sup spectral norm of cross blocks.

    Quadratic games have constant Jacobian blocks, so the result is exact and
    sample-independent.
    """
    _uniform_blocks(g)
    n = g.num_players
    ups = np.zeros((n, n))
    for i in range(n):
        qii = g.block(i, i)
        ups[i, i] = float(np.linalg.eigvalsh((qii + qii.T) / 2.0)[0])
        for j in range(n):
            if j != i:
                ups[i, j] = -float(np.linalg.norm(g.block(i, j), 2))
    return ups


def p_upsilon_check(g: QuadraticGame, samples: SampleSet | None = None) -> CertificateReport:
    """Own blocks symmetric positive definite and the comparison matrix a
    P-matrix; on pass the game has a unique Nash equilibrium."""
    _uniform_blocks(g)
    lam_min = np.inf
    bad_player = None
    for i in range(g.num_players):
        lam = float(np.linalg.eigvalsh(g.block(i, i))[0])
        if lam < lam_min:
            lam_min = lam
            bad_player = i
    budget = {"players": g.num_players}
    if lam_min <= 0.0:
        witness = {"clause": "own-block-pd", "player": bad_player, "lambda_min": lam_min}
        return CertificateReport("upsilon", FAIL, lam_min, witness, None, budget,
                                 "own-block Hessian is not positive definite")
    ups = upsilon_build(g, samples)
    rep = pmatrix_minors(ups)
    metrics = {"upsilon": ups.tolist()}
    if rep.verdict == FAIL:
        witness = {"clause": "upsilon-pmatrix", "index_set": rep.witness["index_set"],
                   "minor": rep.witness["minor"]}
        return CertificateReport("upsilon", FAIL, rep.margin, witness, None, budget,
                                 "comparison matrix is not a P-matrix", metrics)
    return CertificateReport("upsilon", PASS, rep.margin, None, None, budget,
                             "comparison matrix is a P-matrix; the game has a unique "
                             "Nash equilibrium", metrics)


DEFAULT_T_SCHEDULE = tuple(float(2 ** k) for k in range(13))


def maximal_rank_tsearch(p: VIProblem, boundary_samples: SampleSet,
                         t_schedule=DEFAULT_T_SCHEDULE, tol=1e-8,
                         beta_grid=None, alpha_samples=None) -> CertificateReport:
    """Search for a scale t making every sampled generalized-Jacobian element
    of the scaled normal map nonsingular.

    Elements have the form beta*diag(alpha) + t*J*(I - beta*diag(alpha)) with
    J the Jacobian at the projected sample and (beta, alpha) ranging over a
    sampled convex hull of the coordinate-drop family.  Standing hypotheses
    (Jacobian sigma_min >= tol on K, nonzero (m-1)-minors at boundary points)
    are verified first.
    """
    m = p.dim
    if m > MINOR_BUDGET_DIM:
        raise BudgetError("minor enumeration exceeds budget for m > 20")
    pts = boundary_samples.points
    budget = {"samples": len(pts), "t_schedule": list(t_schedule)}
    # Standing hypothesis: full-rank Jacobian on K.
    for x in pts:
        z = project(p.set, x)
        s = float(np.linalg.svd(jacobian(p, z), compute_uv=False)[-1])
        if s < tol:
            witness = {"hypothesis": "jacobian-full-rank", "point": z.tolist(),
                       "sigma_min": s}
            return CertificateReport("maximal-rank", FAIL, s, witness,
                                     boundary_samples.seed, budget,
                                     "Jacobian rank hypothesis fails at a sample")
    if p.set.is_full_space:
        # No boundary: the generalized Jacobian is the singleton {dF(x)}.
        s_min = min(float(np.linalg.svd(jacobian(p, x), compute_uv=False)[-1]) for x in pts)
        return CertificateReport("maximal-rank", PASS, s_min, None, boundary_samples.seed,
                                 budget, f"full-space degenerate case: Jacobian "
                                 f"sigma_min >= tol at samples; {SAMPLED_NOTE}",
                                 {"t": 1.0})
    # Standing hypothesis: nonzero (m-1)x(m-1) principal minors at boundary points.
    on_boundary = [x for x in pts
                   if p.set.contains(x) and bool(np.any((x == p.set.lo) | (x == p.set.hi)))]
    if m >= 2:
        for x in on_boundary:
            a = jacobian(p, x)
            for idx in combinations(range(m), m - 1):
                d = principal_minor_det(a[np.ix_(idx, idx)])
                if abs(d) < tol:
                    witness = {"hypothesis": "m-1-minors", "point": x.tolist(),
                               "index_set": list(idx), "minor": d}
                    return CertificateReport("maximal-rank", FAIL, abs(d), witness,
                                             boundary_samples.seed, budget,
                                             "vanishing (m-1)-minor at a boundary sample")
    hull = convg_hull_sample(m, beta_grid or (0.0, 0.25, 0.5, 0.75, 1.0),
                             alpha_samples, seed=boundary_samples.seed)
    eye = np.eye(m)
    jacs = [jacobian(p, project(p.set, x)) for x in pts]
    for t in t_schedule:
        s_min = np.inf
        for jf in jacs:
            for elem in hull:
                bd = elem.beta * np.diag(elem.alpha)
                mat = bd + t * jf @ (eye - bd)
                s = float(np.linalg.svd(mat, compute_uv=False)[-1])
                if s < s_min:
                    s_min = s
        if s_min >= tol:
            return CertificateReport("maximal-rank", PASS, s_min, None,
                                     boundary_samples.seed, budget,
                                     f"scale t={t} makes every sampled element "
                                     f"nonsingular; {SAMPLED_NOTE}", {"t": t})
    return CertificateReport("maximal-rank", INCONCLUSIVE, None, None,
                             boundary_samples.seed, budget,
                             "no scale in the schedule certified; the existence "
                             "theorem may still apply with a larger t")


def pl_condition_check(g: QuadraticGame, xbar, samples=200, seed=0,
                       radius=5.0) -> CertificateReport:
    """Gap-domination check at a stationary candidate: for each player the
    squared own gradient must dominate a positive multiple of the
    suboptimality gap, upgrading the candidate to a Nash equilibrium."""
    xbar = as_vector(xbar, g.dim)
    vi = game_to_vi(g)
    grad_norm = float(np.linalg.norm(vi.F(xbar)))
    if grad_norm > 1e-6:
        raise ValueError(
            f"candidate is not stationary: gradient-map norm {grad_norm:.3e} > 1e-6")
    rng = np.random.default_rng(seed)
    mus = []
    budget = {"samples": samples}
    for i in range(g.num_players):
        sl = g.block_slice(i)
        qii = g.block(i, i)
        b = np.zeros(g.block_sizes[i])
        for j in range(g.num_players):
            if j != i:
                b = b + g.block(i, j) @ xbar[g.block_slice(j)]
        b = b + g.c[i]
        lam = float(np.linalg.eigvalsh(qii)[0])
        if lam > 1e-12:
            x_opt = np.linalg.solve(qii, -b)
        elif lam < -1e-10:
            return CertificateReport(
                "pl", INCONCLUSIVE, None, None, seed, budget,
                f"player {i} cost is unbounded below in its own variable; "
                "no finite inner minimum exists", {"player": i})
        else:
            x_opt, residual = np.linalg.lstsq(qii, -b, rcond=None)[:2]
            if np.linalg.norm(qii @ x_opt + b) > 1e-8:
                return CertificateReport(
                    "pl", INCONCLUSIVE, None, None, seed, budget,
                    f"player {i} cost decreases linearly along a flat direction; "
                    "no finite inner minimum exists", {"player": i})
        # gap(x_i) = 1/2 (x_i - x_opt)' Q_ii (x_i - x_opt); exact for quadratics
        mu_i = np.inf
        lo = np.where(np.isfinite(g.box.lo[sl]), g.box.lo[sl], xbar[sl] - radius)
        hi = np.where(np.isfinite(g.box.hi[sl]), g.box.hi[sl], xbar[sl] + radius)
        for _ in range(samples):
            xi = rng.uniform(lo, np.maximum(hi, lo))
            dx = xi - x_opt
            gap = float(0.5 * dx @ qii @ dx)
            if gap <= 1e-12:
                continue
            grad2 = float(np.sum((qii @ xi + b) ** 2))
            mu_i = min(mu_i, grad2 / gap)
        if not np.isfinite(mu_i):
            return CertificateReport("pl", INCONCLUSIVE, None, None, seed, budget,
                                     f"player {i}: no sample with a positive gap",
                                     {"player": i})
        mus.append(mu_i)
    margin = float(min(mus))
    metrics = {"mu": [float(v) for v in mus]}
    if margin > 0.0:
        return CertificateReport("pl", PASS, margin, None, seed, budget,
                                 "gap-domination holds at every sample; the candidate "
                                 f"is a Nash equilibrium; {SAMPLED_NOTE}", metrics)
    k = int(np.argmin(mus))
    return CertificateReport("pl", FAIL, margin, {"player": k, "mu": float(mus[k])},
                             seed, budget, "nonpositive gap-domination constant", metrics)


def hessian_block_convexity(g: QuadraticGame) -> CertificateReport:
    """Smallest eigenvalue over the symmetrized own-block Hessians; positive
    margin means every player's cost is strongly convex in its own variable."""
    margin = np.inf
    bad = None
    for i in range(g.num_players):
        qii = g.block(i, i)
        lam = float(np.linalg.eigvalsh((qii + qii.T) / 2.0)[0])
        if lam < margin:
            margin = lam
            bad = i
    budget = {"players": g.num_players}
    if margin > 0.0:
        return CertificateReport("block-convexity", PASS, float(margin), None, None,
                                 budget, "every own-block Hessian is positive definite")
    return CertificateReport("block-convexity", FAIL, float(margin),
                             {"player": bad, "lambda_min": float(margin)}, None, budget,
                             "own-block Hessian with nonpositive eigenvalue")
