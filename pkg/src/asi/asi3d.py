"""Mistake counting on the sphere.

For each group the azimuth extremes are found exactly as on the circle, the
elevation extremes are the plain min/max, the enclosed patch of sphere is
flattened onto a rectangle and a convex hull is drawn around the group's own
points. Foreign nodes inside the patch whose projection lands in the hull are
the group's mistakes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

import numpy as np

from .asi2d import AzimuthExtremes, GroupLabeling, as_labeling, azimuth_extremes
from .geometry import (
    AngularCoords,
    InputError,
    Polygon,
    circular_ranks,
    contains_mask,
    convex_hull,
    map_to_rectangle,
)


@dataclass(frozen=True)
class RegionSpec:
    group: Hashable
    theta_ext1: float
    theta_ext2: float
    flag: int
    phi_ext1: float
    phi_ext2: float
    hull: Polygon


def _require_3d(coords: AngularCoords) -> None:
    if coords.dims != 3:
        raise InputError("3D mistake counting needs elevation angles")


def elevation_extremes(coords: AngularCoords, labels, g) -> tuple[float, float]:
    _require_3d(coords)
    phi = coords.phi[as_labeling(labels).members(g)]
    return float(phi.min()), float(phi.max())


def region_spec(coords: AngularCoords, labels, g, ranks=None) -> RegionSpec:
    _require_3d(coords)
    lab = as_labeling(labels)
    az: AzimuthExtremes = azimuth_extremes(coords.theta, lab, g, ranks=ranks)
    lo, hi = elevation_extremes(coords, lab, g)
    members = lab.members(g)
    x, y = map_to_rectangle(
        coords.theta[members], coords.phi[members], az.theta_ext1, az.theta_ext2, lo, az.flag
    )
    hull = convex_hull(np.column_stack([x, y]))
    return RegionSpec(g, az.theta_ext1, az.theta_ext2, az.flag, lo, hi, hull)


def candidate_mask(coords: AngularCoords, region: RegionSpec) -> np.ndarray:
    """Boolean mask of nodes strictly inside the azimuth/elevation extremes."""
    theta, phi = coords.theta, coords.phi
    band = (phi > region.phi_ext1) & (phi < region.phi_ext2)
    if region.flag == 0:
        arc = (theta > region.theta_ext1) & (theta < region.theta_ext2)
    else:
        arc = (theta < region.theta_ext1) | (theta > region.theta_ext2)
    return band & arc


def candidate_nodes(coords: AngularCoords, region: RegionSpec) -> np.ndarray:
    _require_3d(coords)
    return np.flatnonzero(candidate_mask(coords, region))


def _mistakes_for(coords: AngularCoords, lab: GroupLabeling, code: int, ranks) -> int:
    g = lab.groups[code]
    region = region_spec(coords, lab, g, ranks=ranks)
    cand = candidate_mask(coords, region) & (lab.codes != code)
    idx = np.flatnonzero(cand)
    if idx.size == 0:
        return 0
    x, y = map_to_rectangle(
        coords.theta[idx], coords.phi[idx], region.theta_ext1, region.theta_ext2,
        region.phi_ext1, region.flag,
    )
    return int(contains_mask(region.hull, np.column_stack([x, y])).sum())


def mistakes_3d(coords: AngularCoords, labels, g) -> int:
    _require_3d(coords)
    lab = as_labeling(labels)
    if len(lab) != len(coords):
        raise InputError(f"{len(coords)} coordinates for {len(lab)} labels")
    return _mistakes_for(coords, lab, lab.code(g), circular_ranks(coords.theta))


def all_mistakes_3d(coords: AngularCoords, labels) -> np.ndarray:
    _require_3d(coords)
    lab = as_labeling(labels)
    ranks = circular_ranks(coords.theta)
    return np.array([_mistakes_for(coords, lab, k, ranks) for k in range(lab.G)], dtype=np.int64)
