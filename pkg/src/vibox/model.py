"""Core problem types: mappings with Jacobians, box sets, quadratic games, VI problems."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class ConfigurationError(ValueError):
    """Raised when problem data is dimensionally inconsistent or malformed."""


class EvaluationError(RuntimeError):
    """Raised when a mapping evaluation produces non-finite values."""

    def __init__(self, msg, coordinate=None):
        super().__init__(msg)
        self.coordinate = coordinate


def as_vector(x, m=None):
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ConfigurationError(f"expected a 1-d vector, got shape {v.shape}")
    if m is not None and v.shape[0] != m:
        raise ConfigurationError(f"expected length {m}, got {v.shape[0]}")
    return v


@dataclass(frozen=True)
class BoxSet:
    """Cartesian product of closed intervals; infinite bounds mark unconstrained coordinates.

    ``blocks``, when present, partitions the coordinates into consecutive
    groups (player action sets in the game case).
    """

    lo: np.ndarray
    hi: np.ndarray
    blocks: tuple[int, ...] | None = None

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=float)
        hi = np.asarray(self.hi, dtype=float)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ConfigurationError("box bounds must be 1-d arrays of equal length")
        if np.any(lo > hi):
            raise ConfigurationError("box has lo > hi in some coordinate")
        if self.blocks is not None:
            blocks = tuple(int(b) for b in self.blocks)
            object.__setattr__(self, "blocks", blocks)
            if any(b <= 0 for b in blocks) or sum(blocks) != lo.shape[0]:
                raise ConfigurationError("block sizes must be positive and sum to the dimension")
        self.lo.setflags(write=False)
        self.hi.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.lo.shape[0]

    @property
    def is_full_space(self) -> bool:
        return bool(np.all(np.isinf(self.lo)) and np.all(np.isinf(self.hi)))

    @property
    def is_bounded(self) -> bool:
        return bool(np.all(np.isfinite(self.lo)) and np.all(np.isfinite(self.hi)))

    def contains(self, x, tol=0.0) -> bool:
        x = as_vector(x, self.dim)
        return bool(np.all(x >= self.lo - tol) and np.all(x <= self.hi + tol))

    @staticmethod
    def full_space(m: int) -> "BoxSet":
        return BoxSet(np.full(m, -np.inf), np.full(m, np.inf))

    @staticmethod
    def bounds(lo, hi, blocks=None) -> "BoxSet":
        return BoxSet(np.asarray(lo, dtype=float), np.asarray(hi, dtype=float), blocks)


@dataclass(frozen=True)
class Mapping:
    """A mapping F: R^m -> R^m with optional analytic Jacobian.

    ``kind`` is one of ``affine`` (data holds A, b), ``game-gradient`` or
    ``builtin``.  Evaluators must be deterministic.
    """

    fn: callable
    dim: int
    jac: callable | None = None
    kind: str = "builtin"
    data: dict = field(default_factory=dict)

    def __call__(self, x) -> np.ndarray:
        x = as_vector(x, self.dim)
        y = np.asarray(self.fn(x), dtype=float)
        bad = np.flatnonzero(~np.isfinite(y))
        if bad.size:
            raise EvaluationError(
                f"mapping produced non-finite value in coordinate {bad[0]}",
                coordinate=int(bad[0]),
            )
        return y


def affine_mapping(a, b=None) -> Mapping:
    """F(x) = A x + b with constant Jacobian A."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ConfigurationError("affine matrix must be square")
    m = a.shape[0]
    b = np.zeros(m) if b is None else as_vector(b, m)
    a.setflags(write=False)
    b.setflags(write=False)
    return Mapping(
        fn=lambda x: a @ x + b,
        dim=m,
        jac=lambda x: a.copy(),
        kind="affine",
        data={"A": a, "b": b},
    )


@dataclass(frozen=True)
class QuadraticGame:
    """N-player game with quadratic costs and box action sets.

    Player i minimizes f_i(x) = 1/2 x_i' Q_ii x_i + x_i' sum_{j!=i} Q_ij x_j + c_i' x_i
    over its box K_i.  Q_ii must be symmetric.
    """

    block_sizes: tuple[int, ...]
    q: dict  # (i, j) -> block matrix; diagonal entries required
    c: tuple[np.ndarray, ...]
    box: BoxSet

    def __post_init__(self):
        n = len(self.block_sizes)
        if n < 1:
            raise ConfigurationError("game needs at least one player")
        if self.box.blocks != tuple(self.block_sizes):
            raise ConfigurationError("box block partition must match game block sizes")
        for i in range(n):
            ni = self.block_sizes[i]
            qii = self.q.get((i, i))
            if qii is None:
                raise ConfigurationError(f"missing own-block matrix for player {i}")
            if qii.shape != (ni, ni):
                raise ConfigurationError(f"own-block of player {i} has wrong shape")
            if not np.allclose(qii, qii.T, atol=0.0):
                raise ConfigurationError(f"own-block of player {i} is not symmetric")
            if self.c[i].shape != (ni,):
                raise ConfigurationError(f"linear term of player {i} has wrong length")
            for j in range(n):
                if j != i and (i, j) in self.q:
                    if self.q[(i, j)].shape != (ni, self.block_sizes[j]):
                        raise ConfigurationError(f"cross block ({i},{j}) has wrong shape")

    @property
    def num_players(self) -> int:
        return len(self.block_sizes)

    @property
    def dim(self) -> int:
        return sum(self.block_sizes)

    def block(self, i, j) -> np.ndarray:
        ni, nj = self.block_sizes[i], self.block_sizes[j]
        return np.asarray(self.q.get((i, j), np.zeros((ni, nj))), dtype=float)

    def block_slice(self, i) -> slice:
        start = sum(self.block_sizes[:i])
        return slice(start, start + self.block_sizes[i])

    def cost(self, i, x) -> float:
        """Player i's cost at the joint action x."""
        x = as_vector(x, self.dim)
        xi = x[self.block_slice(i)]
        cross = sum(
            self.block(i, j) @ x[self.block_slice(j)]
            for j in range(self.num_players)
            if j != i
        )
        if isinstance(cross, int):  # single player: empty sum
            cross = np.zeros_like(xi)
        return float(0.5 * xi @ self.block(i, i) @ xi + xi @ cross + self.c[i] @ xi)

    def full_matrix(self) -> np.ndarray:
        """Block matrix of the game gradient mapping: diagonal Q_ii, off-diagonal Q_ij."""
        m = self.dim
        a = np.zeros((m, m))
        for i in range(self.num_players):
            for j in range(self.num_players):
                a[self.block_slice(i), self.block_slice(j)] = self.block(i, j)
        return a

    def linear_term(self) -> np.ndarray:
        return np.concatenate(self.c)


def make_game(block_sizes, q, c, box) -> QuadraticGame:
    q = {k: np.asarray(v, dtype=float) for k, v in q.items()}
    c = tuple(np.asarray(v, dtype=float) for v in c)
    return QuadraticGame(tuple(int(b) for b in block_sizes), q, c, box)


@dataclass(frozen=True)
class VIProblem:
    """A variational inequality VI(K, F): find x* in K with <F(x*), x - x*> >= 0 on K."""

    mapping: Mapping
    set: BoxSet
    name: str = "unnamed"
    game: QuadraticGame | None = None

    def __post_init__(self):
        if self.mapping.dim != self.set.dim:
            raise ConfigurationError(
                f"mapping dimension {self.mapping.dim} != set dimension {self.set.dim}"
            )

    @property
    def dim(self) -> int:
        return self.set.dim

    def F(self, x) -> np.ndarray:
        return self.mapping(x)


def game_to_vi(g: QuadraticGame, name="game") -> VIProblem:
    """Compile a quadratic game to its gradient-mapping VI.

    F_i(x) = Q_ii x_i + sum_{j!=i} Q_ij x_j + c_i; the Jacobian is the
    constant block matrix of the Q blocks.
    """
    a = g.full_matrix()
    b = g.linear_term()
    a.setflags(write=False)
    b.setflags(write=False)
    mapping = Mapping(
        fn=lambda x: a @ x + b,
        dim=g.dim,
        jac=lambda x: a.copy(),
        kind="game-gradient",
        data={"A": a, "b": b},
    )
    return VIProblem(mapping=mapping, set=g.box, name=name, game=g)


def jacobian(p: VIProblem, x) -> np.ndarray:
    """Jacobian of F at x: analytic when available, else central finite differences.

    The finite-difference step is 1e-6 * (1 + |x_i|) per coordinate.
    """
    x = as_vector(x, p.dim)
    if p.mapping.jac is not None:
        return np.asarray(p.mapping.jac(x), dtype=float)
    return fd_jacobian(p.mapping, x)


def fd_jacobian(f, x) -> np.ndarray:
    """Central-difference Jacobian of an arbitrary vector mapping."""
    x = np.asarray(x, dtype=float)
    m = x.shape[0]
    cols = []
    for i in range(m):
        h = 1e-6 * (1.0 + abs(x[i]))
        xp = x.copy()
        xm = x.copy()
        xp[i] += h
        xm[i] -= h
        cols.append((np.asarray(f(xp), dtype=float) - np.asarray(f(xm), dtype=float)) / (2.0 * h))
    return np.column_stack(cols)
