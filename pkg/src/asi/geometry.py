"""Angular and planar primitives used by the 2D and 3D mistake counters."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi
EPS = 1e-12


class InputError(ValueError):
    """Raised for malformed user input (bad angles, unknown groups, ...)."""


class NumericalError(ArithmeticError):
    """Raised when a numerical routine cannot produce a valid result."""


def normalize_azimuth(theta) -> np.ndarray:
    """Wrap polar/azimuth angles into [0, 2pi)."""
    theta = np.asarray(theta, dtype=float)
    if not np.all(np.isfinite(theta)):
        raise InputError("non-finite angle")
    out = np.mod(theta, TWO_PI)
    # mod can return exactly 2pi for tiny negative inputs
    out[out >= TWO_PI] = 0.0
    return out


def check_elevation(phi) -> np.ndarray:
    """Validate elevations; values outside [-pi/2, pi/2] are rejected, never clamped."""
    phi = np.asarray(phi, dtype=float)
    if not np.all(np.isfinite(phi)):
        raise InputError("non-finite elevation")
    half = math.pi / 2
    bad = np.flatnonzero((phi < -half) | (phi > half))
    if bad.size:
        raise InputError(f"elevation out of [-pi/2, pi/2] at node index {int(bad[0])}")
    return phi


def circular_ranks(angles) -> np.ndarray:
    """Rank angles 1..N in increasing order; ties keep ascending node index."""
    angles = np.asarray(angles, dtype=float)
    if not np.all(np.isfinite(angles)):
        raise InputError("non-finite angle")
    order = np.argsort(angles, kind="stable")
    ranks = np.empty(len(angles), dtype=np.int64)
    ranks[order] = np.arange(1, len(angles) + 1)
    return ranks


class Containment(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class Polygon:
    """Convex polygon with vertices in counter-clockwise order.

    One or two vertices describe a degenerate hull (a point or a segment).
    """

    vertices: np.ndarray

    @property
    def degenerate(self) -> bool:
        return len(self.vertices) < 3

    def __len__(self) -> int:
        return len(self.vertices)


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> Polygon:
    """Monotone-chain convex hull; collinear boundary points are dropped."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        raise InputError("convex hull of an empty point set")
    if not np.all(np.isfinite(pts)):
        raise InputError("non-finite point")
    uniq = sorted(set(map(tuple, pts.tolist())))
    if len(uniq) == 1:
        return Polygon(np.array(uniq, dtype=float))

    lower: list[tuple[float, float]] = []
    for p in uniq:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= EPS:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(uniq):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= EPS:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        # all collinear: keep the two extreme points
        hull = [uniq[0], uniq[-1]]
    return Polygon(np.array(hull, dtype=float))


def _on_segment(a, b, p, eps: float = EPS) -> bool:
    ab = b - a
    length = math.hypot(ab[0], ab[1])
    if length <= eps:
        return math.hypot(p[0] - a[0], p[1] - a[1]) <= eps
    if abs(_cross(a, b, p)) > eps * max(1.0, length):
        return False
    t = ((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / (length * length)
    return -eps <= t <= 1.0 + eps


def polygon_contains(poly: Polygon, p) -> Containment:
    """Classify ``p`` against a convex CCW polygon."""
    v = poly.vertices
    p = np.asarray(p, dtype=float)
    if len(v) == 1:
        if math.hypot(p[0] - v[0, 0], p[1] - v[0, 1]) <= EPS:
            return Containment.BOUNDARY
        return Containment.OUTSIDE
    if len(v) == 2:
        return Containment.BOUNDARY if _on_segment(v[0], v[1], p) else Containment.OUTSIDE

    on_edge = False
    for k in range(len(v)):
        c = _cross(v[k], v[(k + 1) % len(v)], p)
        if c < -EPS:
            return Containment.OUTSIDE
        if c <= EPS:
            on_edge = True
    return Containment.BOUNDARY if on_edge else Containment.INSIDE


def contains_mask(poly: Polygon, points) -> np.ndarray:
    """Vectorised inside-or-boundary test for many points at once."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        return np.zeros(0, dtype=bool)
    v = poly.vertices
    if poly.degenerate:
        return np.array([polygon_contains(poly, p) is not Containment.OUTSIDE for p in pts])
    a = v
    b = np.roll(v, -1, axis=0)
    # cross[k, j] for edge k and point j
    cross = (b[:, 0:1] - a[:, 0:1]) * (pts[None, :, 1] - a[:, 1:2]) - (
        b[:, 1:2] - a[:, 1:2]
    ) * (pts[None, :, 0] - a[:, 0:1])
    return np.all(cross >= -EPS, axis=0)


def map_to_rectangle(theta, phi, theta_ext1, theta_ext2, phi_ext1, flag: int):
    """Project (azimuth, elevation) inside a group's extremes onto a flat rectangle.

    Works on scalars or arrays. Returns ``(x, y)``.
    """
    theta = np.asarray(theta, dtype=float)
    y = np.asarray(phi, dtype=float) - phi_ext1
    if flag == 0:
        x = theta - theta_ext1
    elif flag == 1:
        # same as mod(theta + (2pi - ext2), 2pi), but exact (0.0) at theta == ext2
        x = np.mod(theta - theta_ext2, TWO_PI)
    else:
        raise InputError(f"flag must be 0 or 1, got {flag!r}")
    if x.ndim == 0:
        return float(x), float(y)
    return x, y


@dataclass(frozen=True, eq=False)
class AngularCoords:
    """Per-node angles: polar ``theta`` (2D) or azimuth ``theta`` plus elevation ``phi`` (3D).

    Azimuths are wrapped into [0, 2pi) on construction; elevations must already
    lie in [-pi/2, pi/2].
    """

    theta: np.ndarray
    phi: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "theta", normalize_azimuth(self.theta).reshape(-1))
        if self.phi is not None:
            phi = check_elevation(self.phi).reshape(-1)
            if len(phi) != len(self.theta):
                raise InputError(
                    f"theta has {len(self.theta)} entries but phi has {len(phi)}"
                )
            object.__setattr__(self, "phi", phi)

    @property
    def dims(self) -> int:
        return 2 if self.phi is None else 3

    def __len__(self) -> int:
        return len(self.theta)

    def permuted(self, perm) -> "AngularCoords":
        """Node ``i`` receives the coordinate tuple of node ``perm[i]``."""
        perm = np.asarray(perm)
        return AngularCoords(self.theta[perm], None if self.phi is None else self.phi[perm])
