"""Nonuniform popularity-similarity (nPSO) network generator.

Nodes are born one at a time on the hyperbolic disk. Node ``t`` is placed at
radius ``2 ln t`` and at an angle drawn from a Gaussian mixture with ``C``
equidistant components; older nodes drift outwards (popularity fading) and the
newcomer links to ``m`` existing nodes, either the hyperbolically closest
(``T = 0``) or through Fermi-Dirac acceptance sampling (``T > 0``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import TWO_PI, InputError


@dataclass(frozen=True)
class NpsoParams:
    N: int
    m: int
    T: float
    gamma: float
    C: int
    seed: int = 0

    def __post_init__(self):
        if not (int(self.N) > int(self.m) >= 1):
            raise InputError(f"need N > m >= 1 (got N={self.N}, m={self.m})")
        if not 0.0 <= self.T < 1.0:
            raise InputError(f"temperature must lie in [0, 1), got {self.T}")
        if not self.gamma >= 2.0:
            raise InputError(f"gamma must be >= 2, got {self.gamma}")
        if int(self.C) < 1:
            raise InputError(f"need at least one community, got C={self.C}")
        if not 0 <= int(self.seed) < 2**64:
            raise InputError("seed must be an unsigned 64-bit integer")

    @property
    def beta(self) -> float:
        return 1.0 / (self.gamma - 1.0)

    @property
    def zeta(self) -> float:
        return 1.0


@dataclass(frozen=True)
class MixtureSpec:
    means: np.ndarray
    sigmas: np.ndarray
    weights: np.ndarray

    @classmethod
    def for_communities(cls, C: int) -> "MixtureSpec":
        spacing = TWO_PI / C
        return cls(
            means=spacing * np.arange(C),
            sigmas=np.full(C, spacing / 6.0),
            weights=np.full(C, 1.0 / C),
        )


@dataclass(frozen=True, eq=False)
class GeneratedNetwork:
    params: NpsoParams
    edges: np.ndarray  # (E, 2) int, u < v
    theta: np.ndarray
    r: np.ndarray  # radii at the end of growth
    labels: np.ndarray  # community index 0..C-1

    @property
    def N(self) -> int:
        return len(self.theta)


def circular_distance(a, b):
    d = np.abs(np.asarray(a) - np.asarray(b)) % TWO_PI
    return np.minimum(d, TWO_PI - d)


def nearest_component(theta, means) -> np.ndarray:
    """Index of the mixture mean closest to each angle on the circle."""
    theta = np.asarray(theta, dtype=float)
    d = circular_distance(theta[:, None], np.asarray(means)[None, :])
    return np.argmin(d, axis=1)


def sample_community_angles(params: NpsoParams, rng: np.random.Generator | None = None):
    """Draw angles from the mixture; labels are the nearest mean, not the drawn component."""
    rng = rng if rng is not None else np.random.Generator(np.random.Philox(params.seed))
    mix = MixtureSpec.for_communities(params.C)
    comp = rng.choice(params.C, size=params.N, p=mix.weights)
    theta = np.mod(rng.normal(mix.means[comp], mix.sigmas[comp]), TWO_PI)
    theta[theta >= TWO_PI] = 0.0
    return theta, nearest_component(theta, mix.means)


def hyperbolic_distance(r1, theta1, r2, theta2):
    dtheta = math.pi - np.abs(math.pi - np.abs(np.asarray(theta1) - np.asarray(theta2)))
    x = np.cosh(r1) * np.cosh(r2) - np.sinh(r1) * np.sinh(r2) * np.cos(dtheta)
    return np.arccosh(np.maximum(x, 1.0))


def cutoff_radius(t: int, r_t: float, m: int, beta: float, T: float) -> float:
    """PSO cutoff radius that yields an expected ``m`` links for node ``t``."""
    if beta == 1.0:
        growth = math.log(t)
    else:
        growth = (1.0 - math.exp(-(1.0 - beta) * math.log(t))) / (1.0 - beta)
    return r_t - 2.0 * math.log(2.0 * T * growth / (math.sin(T * math.pi) * m))


def fermi_dirac(d, R_t: float, T: float):
    with np.errstate(over="ignore"):
        z = np.clip((np.asarray(d) - R_t) / (2.0 * T), -700.0, 700.0)
    return 1.0 / (1.0 + np.exp(z))


MAX_TRIALS_PER_LINK = 10_000


def _attach(d: np.ndarray, m: int, R_t: float, T: float, rng: np.random.Generator) -> list[int]:
    """Pick ``m`` distinct targets among ``len(d)`` existing nodes."""
    n_old = len(d)
    if n_old <= m:
        return list(range(n_old))
    if T == 0.0:
        return np.argsort(d, kind="stable")[:m].tolist()

    p = fermi_dirac(d, R_t, T)
    chosen: list[int] = []
    taken = np.zeros(n_old, dtype=bool)
    budget = MAX_TRIALS_PER_LINK * m
    batch = max(64, 4 * n_old)
    while len(chosen) < m and budget > 0:
        k = min(batch, budget)
        budget -= k
        cand = rng.integers(n_old, size=k)
        accept = rng.random(k) < p[cand]
        for s in cand[accept]:
            if not taken[s]:
                taken[s] = True
                chosen.append(int(s))
                if len(chosen) == m:
                    break
    if len(chosen) < m:
        # acceptance budget exhausted: fill with the closest unconnected nodes
        for s in np.argsort(d, kind="stable"):
            if not taken[s]:
                taken[s] = True
                chosen.append(int(s))
                if len(chosen) == m:
                    break
    return chosen


def generate(params: NpsoParams) -> GeneratedNetwork:
    """Grow one nPSO network; identical params (including seed) give identical output."""
    N, m, T, beta = int(params.N), int(params.m), float(params.T), params.beta
    rng = np.random.Generator(np.random.Philox(params.seed))
    theta, labels = sample_community_angles(params, rng)

    birth = 2.0 * np.log(np.arange(1, N + 1))
    edges: list[tuple[int, int]] = []
    for t in range(2, N + 1):
        new = t - 1  # 0-based node id
        r_t = birth[new]
        # faded radii of the existing nodes at time t
        r_old = beta * birth[:new] + (1.0 - beta) * r_t
        d = hyperbolic_distance(r_old, theta[:new], r_t, theta[new])
        R_t = cutoff_radius(t, r_t, m, beta, T) if T > 0 else 0.0
        for s in _attach(d, m, R_t, T, rng):
            edges.append((s, new))

    r_final = beta * birth + (1.0 - beta) * birth[-1]
    return GeneratedNetwork(
        params=params,
        edges=np.array(edges, dtype=np.int64).reshape(-1, 2),
        theta=theta,
        r=r_final,
        labels=labels,
    )
