"""Shared plumbing for the synthetic-network experiments (scripts and acceptance tests)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .embed import EmbeddingSpec, Graph, embed, largest_component
from .geometry import AngularCoords
from .npso import NpsoParams, generate
from .significance import AsiConfig, AsiReport, evaluate


@dataclass(frozen=True)
class SweepConfig:
    N: int = 100
    m: int = 4
    C: int = 5
    gamma: float = 3.0
    temperatures: tuple[float, ...] = (0.1, 0.3, 0.5, 0.7)
    seeds: tuple[int, ...] = tuple(range(10))
    method: str = "ra1-le"
    dims: tuple[int, ...] = (2, 3)
    R: int = 1000
    workers: int | None = None


@dataclass
class EmbeddedNetwork:
    params: NpsoParams
    coords: dict[int, AngularCoords]
    labels: list[int]
    kept: np.ndarray
    reports: dict[int, AsiReport] = field(default_factory=dict)


def embed_network(params: NpsoParams, method: str = "ra1-le", dims=(2, 3)) -> EmbeddedNetwork:
    """Generate, keep the largest component and embed it once per requested dimension."""
    net = generate(params)
    graph, kept = largest_component(Graph(net.N, net.edges))
    coords = {d: embed(graph, EmbeddingSpec.parse(method, d, params.gamma)).angles for d in dims}
    return EmbeddedNetwork(params, coords, net.labels[kept].tolist(), kept)


def score(en: EmbeddedNetwork, R: int, seed: int = 0, workers=None) -> EmbeddedNetwork:
    for d, c in en.coords.items():
        en.reports[d] = evaluate(c, en.labels, AsiConfig(R=R, seed=seed, workers=workers))
    return en


def temperature_sweep(cfg: SweepConfig) -> dict[float, list[EmbeddedNetwork]]:
    out: dict[float, list[EmbeddedNetwork]] = {}
    for T in cfg.temperatures:
        out[T] = [
            score(
                embed_network(NpsoParams(cfg.N, cfg.m, T, cfg.gamma, cfg.C, seed), cfg.method, cfg.dims),
                cfg.R,
                seed,
                cfg.workers,
            )
            for seed in cfg.seeds
        ]
    return out


def median_asi(networks: list[EmbeddedNetwork], dims: int) -> float:
    return float(np.median([en.reports[dims].asi for en in networks]))


def reshuffled(coords: AngularCoords, seed: int) -> AngularCoords:
    """Coordinates randomly reassigned among the nodes."""
    perm = np.random.Generator(np.random.Philox(seed)).permutation(len(coords))
    return coords.permuted(perm)
