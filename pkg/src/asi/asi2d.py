"""Mistake counting on the circle and the closed-form 2D worst case."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .geometry import InputError, circular_ranks


@dataclass(frozen=True, eq=False)
class GroupLabeling:
    """Group membership of N nodes.

    ``groups`` holds the distinct labels in sorted order and ``codes[i]`` is the
    position of node ``i``'s label inside ``groups``.
    """

    labels: np.ndarray
    groups: tuple
    codes: np.ndarray
    sizes: np.ndarray

    @classmethod
    def from_labels(cls, labels: Sequence[Hashable]) -> "GroupLabeling":
        labels = list(labels)
        if not labels:
            raise InputError("empty labeling")
        distinct = set(labels)
        try:
            groups = tuple(sorted(distinct))
        except TypeError:
            groups = tuple(sorted(distinct, key=lambda x: (type(x).__name__, str(x))))
        index = {g: k for k, g in enumerate(groups)}
        codes = np.fromiter((index[x] for x in labels), dtype=np.int64, count=len(labels))
        sizes = np.bincount(codes, minlength=len(groups))
        arr = np.empty(len(labels), dtype=object)
        arr[:] = labels
        return cls(arr, groups, codes, sizes)

    @property
    def G(self) -> int:
        return len(self.groups)

    def __len__(self) -> int:
        return len(self.codes)

    def code(self, g: Hashable) -> int:
        try:
            return self.groups.index(g)
        except ValueError:
            raise InputError(f"unknown group id {g!r}") from None

    def members(self, g: Hashable) -> np.ndarray:
        return np.flatnonzero(self.codes == self.code(g))


def as_labeling(labels) -> GroupLabeling:
    if isinstance(labels, GroupLabeling):
        return labels
    return GroupLabeling.from_labels(labels)


@dataclass(frozen=True)
class GapProfile:
    group: Hashable
    sorted_ranks: np.ndarray
    gaps: np.ndarray

    @property
    def max_index(self) -> int:
        """1-based index of the largest gap (smallest index on ties)."""
        return int(np.argmax(self.gaps)) + 1


def _check_ranks(ranks, n: int) -> np.ndarray:
    ranks = np.asarray(ranks, dtype=np.int64)
    if len(ranks) != n:
        raise InputError(f"{len(ranks)} ranks for {n} labeled nodes")
    if not np.array_equal(np.sort(ranks), np.arange(1, n + 1)):
        raise InputError("ranks are not a permutation of 1..N")
    return ranks


def gap_profile(ranks, labels, g) -> GapProfile:
    """Foreign-node counts between circularly consecutive members of group ``g``."""
    lab = as_labeling(labels)
    n = len(lab)
    ranks = _check_ranks(ranks, n)
    s = np.sort(ranks[lab.members(g)])
    gaps = np.empty(len(s), dtype=np.int64)
    gaps[:-1] = np.diff(s) - 1
    gaps[-1] = n - s[-1] + s[0] - 1
    return GapProfile(g, s, gaps)


def mistakes_2d(ranks, labels, g) -> int:
    """Foreign nodes inside the arc of group ``g``: total gaps minus the largest one."""
    prof = gap_profile(ranks, labels, g)
    return int(prof.gaps.sum() - prof.gaps.max())


def worst_case_theoretical(N: int, sizes) -> int:
    """Sum over groups of ceil((N - Ng) (Ng - 1) / Ng), with integer arithmetic."""
    if N < 1:
        raise InputError("N must be >= 1")
    sizes = [int(s) for s in sizes]
    if sum(sizes) != N or any(s < 1 for s in sizes):
        raise InputError(f"group sizes {sizes} do not partition N={N}")
    # ceil(a / b) for positive b without floats
    return sum(-(-(N - s) * (s - 1) // s) for s in sizes)


@dataclass(frozen=True)
class AzimuthExtremes:
    theta_ext1: float
    theta_ext2: float
    flag: int
    nodes: tuple[int, int]


def azimuth_extremes(theta, labels, g, ranks=None) -> AzimuthExtremes:
    """Angles of the two members bounding the largest foreign gap of group ``g``.

    ``flag`` is 0 when the group's interior is ``ext1 < theta < ext2`` and 1 when
    it wraps through zero (``theta > ext2`` or ``theta < ext1``).
    """
    theta = np.asarray(theta, dtype=float)
    lab = as_labeling(labels)
    if ranks is None:
        ranks = circular_ranks(theta)
    prof = gap_profile(ranks, lab, g)
    members = lab.members(g)
    by_rank = members[np.argsort(ranks[members])]
    i = prof.max_index
    k = len(by_rank)
    if i == k:
        a, b = by_rank[0], by_rank[-1]
        flag = 0
    else:
        a, b = by_rank[i - 1], by_rank[i]
        flag = 1
    return AzimuthExtremes(float(theta[a]), float(theta[b]), flag, (int(a), int(b)))


def all_mistakes_2d(theta, labels) -> np.ndarray:
    """Per-group mistakes for every group at once (index = group code)."""
    lab = as_labeling(labels)
    n = len(lab)
    order = np.argsort(np.asarray(theta, dtype=float), kind="stable")
    seq = lab.codes[order]
    # positions (0-based ranks) grouped by code, ascending within each group
    pos = np.argsort(seq, kind="stable")
    sizes = lab.sizes
    starts = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    gaps = np.empty(n, dtype=np.int64)
    gaps[:-1] = np.diff(pos) - 1
    last = starts + sizes - 1
    gaps[last] = n - pos[last] + pos[starts] - 1
    return (n - sizes) - np.maximum.reduceat(gaps, starts)


def total_mistakes_2d(theta, labels) -> int:
    return int(all_mistakes_2d(theta, labels).sum())
