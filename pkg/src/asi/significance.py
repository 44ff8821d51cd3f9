"""ASI score, uniformly random reshuffling null model and empirical p-value."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Hashable

import numpy as np

from .asi2d import GroupLabeling, all_mistakes_2d, as_labeling, worst_case_theoretical
from .asi3d import all_mistakes_3d
from .geometry import AngularCoords, InputError, NumericalError

MODES = ("empirical", "theoretical")


@dataclass(frozen=True)
class AsiConfig:
    R: int = 1000
    seed: int = 0
    worst_case_mode: str = "empirical"
    dims: int | None = None  # None: taken from the coordinates
    workers: int | None = None  # None: ASI_THREADS or 1

    def __post_init__(self):
        if int(self.R) < 1:
            raise InputError(f"number of reshuffles must be >= 1, got {self.R}")
        if not 0 <= int(self.seed) < 2**64:
            raise InputError("seed must be an unsigned 64-bit integer")
        if self.worst_case_mode not in MODES:
            raise InputError(f"worst_case_mode must be one of {MODES}")
        if self.dims not in (None, 2, 3):
            raise InputError("dims must be 2 or 3")
        if self.dims == 3 and self.worst_case_mode == "theoretical":
            raise InputError("the theoretical worst case is only defined in 2D")


@dataclass
class AsiReport:
    asi: float
    raw_asi: float
    total_mistakes: int
    per_group_mistakes: dict[Hashable, int]
    group_sizes: dict[Hashable, int]
    worst_case: int
    null_asis: np.ndarray = field(repr=False)
    p_value: float
    config: AsiConfig

    @property
    def dims(self) -> int:
        return self.config.dims


def _as_coords(coords) -> AngularCoords:
    if isinstance(coords, AngularCoords):
        return coords
    arr = np.asarray(coords, dtype=float)
    if arr.ndim == 1:
        return AngularCoords(arr)
    if arr.ndim == 2 and arr.shape[1] == 2:
        return AngularCoords(arr[:, 0], arr[:, 1])
    raise InputError("coordinates must be theta values or (theta, phi) rows")


def _per_group(coords: AngularCoords, lab: GroupLabeling) -> np.ndarray:
    if coords.dims == 2:
        return all_mistakes_2d(coords.theta, lab)
    return all_mistakes_3d(coords, lab)


def total_mistakes(coords, labels) -> tuple[dict, int]:
    """Per-group mistakes ``{group: w_g}`` and their sum."""
    coords = _as_coords(coords)
    lab = as_labeling(labels)
    if len(coords) != len(lab):
        raise InputError(f"{len(coords)} coordinates for {len(lab)} labels")
    w = _per_group(coords, lab)
    return {g: int(v) for g, v in zip(lab.groups, w)}, int(w.sum())


def reshuffle_rng(seed: int, r: int) -> np.random.Generator:
    """Independent Philox substream for reshuffle ``r``.

    Each reshuffle gets the base stream advanced by ``r * 2**128`` draws, so the
    permutation drawn for ``r`` does not depend on which worker computes it.
    """
    return np.random.Generator(np.random.Philox(seed).jumped(r))


def _null_chunk(coords: AngularCoords, lab: GroupLabeling, seed: int, rs) -> list[int]:
    out = []
    n = len(coords)
    for r in rs:
        perm = reshuffle_rng(seed, r).permutation(n)
        out.append(int(_per_group(coords.permuted(perm), lab).sum()))
    return out


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        env = os.environ.get("ASI_THREADS")
        workers = int(env) if env else 1
    return max(1, int(workers))


def null_totals(coords, labels, R: int, seed: int, workers: int | None = None) -> np.ndarray:
    """Total mistakes for ``R`` uniformly random reshufflings of the coordinate tuples."""
    coords = _as_coords(coords)
    lab = as_labeling(labels)
    if R < 1:
        raise InputError("R must be >= 1")
    workers = min(_resolve_workers(workers), R)
    if workers == 1:
        return np.array(_null_chunk(coords, lab, seed, range(R)), dtype=np.int64)
    chunks = np.array_split(np.arange(R), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_null_chunk, [coords] * workers, [lab] * workers,
                         [seed] * workers, [c.tolist() for c in chunks])
        totals = [t for part in parts for t in part]
    return np.array(totals, dtype=np.int64)


def asi_score(observed: int, denominator: int) -> tuple[float, float]:
    """Return ``(asi, raw_asi)``; ``asi`` is ``raw_asi`` clamped into [0, 1]."""
    if denominator == 0:
        if observed == 0:
            return 1.0, 1.0
        raise NumericalError(
            f"{observed} observed mistakes but a worst case of 0; increase R"
        )
    raw = 1.0 - observed / denominator
    return min(1.0, max(0.0, raw)), raw


def null_asi_scores(totals, denominator: int | None = None) -> np.ndarray:
    """Score every reshuffle against the worst reshuffle (or a fixed denominator)."""
    totals = np.asarray(totals, dtype=np.int64)
    if denominator is None:
        denominator = int(totals.max())
    if denominator == 0:
        return np.ones(len(totals))
    return np.clip(1.0 - totals / denominator, 0.0, 1.0)


def p_value(asi: float, null_asis) -> float:
    null_asis = np.asarray(null_asis, dtype=float)
    return (1 + int(np.count_nonzero(null_asis >= asi))) / (1 + len(null_asis))


def evaluate(coords, labels, config: AsiConfig | None = None) -> AsiReport:
    """Full ASI evaluation with significance for one labeled embedding."""
    config = config or AsiConfig()
    coords = _as_coords(coords)
    lab = as_labeling(labels)
    if config.dims is not None and config.dims != coords.dims:
        raise InputError(f"config asks for {config.dims}D but coordinates are {coords.dims}D")
    if coords.dims == 3 and config.worst_case_mode == "theoretical":
        raise InputError("the theoretical worst case is only defined in 2D")
    config = AsiConfig(**{**asdict(config), "dims": coords.dims})

    per_group, observed = total_mistakes(coords, lab)
    totals = null_totals(coords, lab, config.R, config.seed, config.workers)
    if config.worst_case_mode == "theoretical":
        worst = worst_case_theoretical(len(lab), lab.sizes)
    else:
        worst = int(totals.max())
    asi, raw = asi_score(observed, worst)
    null_asis = null_asi_scores(totals, worst)
    return AsiReport(
        asi=asi,
        raw_asi=raw,
        total_mistakes=observed,
        per_group_mistakes=per_group,
        group_sizes={g: int(s) for g, s in zip(lab.groups, lab.sizes)},
        worst_case=worst,
        null_asis=null_asis,
        p_value=p_value(asi, null_asis),
        config=config,
    )
