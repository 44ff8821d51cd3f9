"""Minimal coalescent-style hyperbolic embedding.

Pipeline: repulsion-attraction pre-weighting of the edges, then angular
coordinates from either Laplacian eigenmaps (2D or 3D) or a minimum-curvilinear
Prim ordering (2D), and finally radial coordinates from the degree ranking.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .geometry import TWO_PI, AngularCoords, InputError, NumericalError


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph on nodes ``0..n-1``; ``weights`` aligned with ``edges``."""

    n: int
    edges: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self):
        e = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= self.n):
            raise InputError("edge endpoint out of range")
        if np.any(e[:, 0] == e[:, 1]):
            raise InputError("self-loops are not allowed")
        e = np.sort(e, axis=1)
        if self.weights is None:
            e = np.unique(e, axis=0)
        elif len(np.unique(e, axis=0)) != len(e):
            raise InputError("duplicate weighted edges")
        object.__setattr__(self, "edges", e)
        if self.weights is not None:
            object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))

    def adjacency(self, values=None) -> sp.csr_matrix:
        vals = np.ones(len(self.edges)) if values is None else np.asarray(values, dtype=float)
        u, v = self.edges[:, 0], self.edges[:, 1]
        a = sp.coo_matrix(
            (np.concatenate([vals, vals]), (np.concatenate([u, v]), np.concatenate([v, u]))),
            shape=(self.n, self.n),
        )
        return a.tocsr()

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n)


def largest_component(graph: Graph) -> tuple[Graph, np.ndarray]:
    """Subgraph on the largest connected component and the kept original node ids."""
    ncomp, comp = connected_components(graph.adjacency(), directed=False)
    if ncomp == 1:
        return graph, np.arange(graph.n)
    sizes = np.bincount(comp)
    # lowest component label wins ties, i.e. the one containing the smallest node id
    keep = np.flatnonzero(comp == np.argmax(sizes))
    remap = np.full(graph.n, -1)
    remap[keep] = np.arange(len(keep))
    mask = (remap[graph.edges[:, 0]] >= 0) & (remap[graph.edges[:, 1]] >= 0)
    w = None if graph.weights is None else graph.weights[mask]
    return Graph(len(keep), remap[graph.edges[mask]], w), keep


def is_connected(graph: Graph) -> bool:
    return connected_components(graph.adjacency(), directed=False)[0] == 1


PREWEIGHTS = ("RA1", "RA2")
METHODS = ("LE", "MCA1", "MCA2")


def preweight(graph: Graph, variant: str = "RA1") -> Graph:
    """Repulsion-attraction edge weights (distance-like: larger means farther).

    ``e_i`` counts the neighbours of ``i`` that are neither ``j`` nor shared with ``j``.
    """
    variant = variant.upper()
    if variant not in PREWEIGHTS:
        raise InputError(f"unknown pre-weighting {variant!r}")
    a = graph.adjacency()
    deg = graph.degrees()
    u, v = graph.edges[:, 0], graph.edges[:, 1]
    cn = np.asarray((a[u].multiply(a[v])).sum(axis=1)).ravel()
    ei = deg[u] - 1 - cn
    ej = deg[v] - 1 - cn
    if variant == "RA1":
        x = (1.0 + ei + ej) / (1.0 + cn)
    else:
        x = (1.0 + ei + ej + ei * ej) / (1.0 + cn)
    return Graph(graph.n, graph.edges, x)


def _require_weights(graph: Graph) -> np.ndarray:
    if graph.weights is None:
        raise InputError("graph must be pre-weighted")
    w = graph.weights
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise InputError("edge weights must be finite and positive")
    return w


def mca_ordering(wgraph: Graph, variant: str = "MCA1") -> list[int]:
    """Node sequence of a Prim minimum spanning tree grown from the highest-degree node.

    MCA1 appends every newly attached node at the tail. MCA2 keeps a
    double-ended sequence and puts the new node at the head when its tree
    parent sits in the first half of the current sequence, else at the tail.
    """
    variant = variant.upper()
    if variant not in ("MCA1", "MCA2"):
        raise InputError(f"unknown MCA variant {variant!r}")
    w = _require_weights(wgraph)
    n = wgraph.n
    if not is_connected(wgraph):
        raise InputError("MCA needs a connected graph; extract the largest component first")

    nbrs: list[list[tuple[float, int]]] = [[] for _ in range(n)]
    for (a, b), x in zip(wgraph.edges.tolist(), w.tolist()):
        nbrs[a].append((x, b))
        nbrs[b].append((x, a))

    root = int(np.argmax(wgraph.degrees()))
    in_tree = np.zeros(n, dtype=bool)
    heap: list[tuple[float, int, int, int, int]] = []

    def push_edges(a: int) -> None:
        for x, b in nbrs[a]:
            if not in_tree[b]:
                heapq.heappush(heap, (x, min(a, b), max(a, b), b, a))

    in_tree[root] = True
    push_edges(root)
    # absolute slot of each node; index in the sequence = slot - head
    slot = {root: 0}
    head, tail = 0, 0
    seq_head: list[int] = []
    seq_tail: list[int] = [root]
    while heap:
        _, _, _, new, parent = heapq.heappop(heap)
        if in_tree[new]:
            continue
        in_tree[new] = True
        length = tail - head + 1
        if variant == "MCA2" and (slot[parent] - head) < length / 2:
            head -= 1
            slot[new] = head
            seq_head.append(new)
        else:
            tail += 1
            slot[new] = tail
            seq_tail.append(new)
        push_edges(new)
    return seq_head[::-1] + seq_tail


def equidistant_angles(order) -> np.ndarray:
    """Place the k-th node of a circular ordering at 2 pi k / N."""
    order = np.asarray(order)
    theta = np.empty(len(order))
    theta[order] = TWO_PI * np.arange(len(order)) / len(order)
    return theta


def le_embedding(wgraph: Graph, dims: int = 2) -> AngularCoords:
    """Laplacian-eigenmap angles using similarities ``1 / x_ij``."""
    if dims not in (2, 3):
        raise InputError("dims must be 2 or 3")
    w = _require_weights(wgraph)
    n = wgraph.n
    if n < dims + 1:
        raise InputError(f"need more than {dims} nodes for a {dims}D embedding")
    if not is_connected(wgraph):
        raise InputError("LE needs a connected graph; extract the largest component first")
    W = wgraph.adjacency(1.0 / w).toarray()
    D = np.diag(W.sum(axis=1))
    try:
        _, vecs = scipy.linalg.eigh(D - W, D)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"generalized eigenproblem failed: {exc}") from exc
    V = vecs[:, 1 : dims + 1]
    # fix the sign of each eigenvector for reproducible output
    pivot = np.argmax(np.abs(V), axis=0)
    V = V * np.sign(V[pivot, np.arange(V.shape[1])])

    if dims == 2:
        return AngularCoords(np.arctan2(V[:, 1], V[:, 0]))
    norms = np.linalg.norm(V, axis=1)
    bad = np.flatnonzero(norms <= 1e-300)
    if bad.size:
        raise NumericalError(f"zero embedding vector for node {int(bad[0])}")
    U = V / norms[:, None]
    phi = np.arcsin(np.clip(U[:, 2], -1.0, 1.0))
    return AngularCoords(np.arctan2(U[:, 1], U[:, 0]), phi)


def radial_coordinates(degrees, gamma: float, N: int | None = None) -> np.ndarray:
    """Radii from the descending-degree rank; negative values (gamma < 2) become 0."""
    if gamma <= 1.0:
        raise InputError(f"gamma must be > 1, got {gamma}")
    degrees = np.asarray(degrees)
    N = len(degrees) if N is None else int(N)
    beta = 1.0 / (gamma - 1.0)
    order = np.lexsort((np.arange(len(degrees)), -degrees))
    rank = np.empty(len(degrees))
    rank[order] = np.arange(1, len(degrees) + 1)
    r = 2.0 * (beta * np.log(rank) + (1.0 - beta) * math.log(N))
    return np.maximum(r, 0.0)


@dataclass(frozen=True)
class EmbeddingSpec:
    preweight: str = "RA1"
    method: str = "LE"
    dims: int = 2
    gamma: float = 3.0

    def __post_init__(self):
        object.__setattr__(self, "preweight", self.preweight.upper())
        object.__setattr__(self, "method", self.method.upper())
        if self.preweight not in PREWEIGHTS:
            raise InputError(f"unknown pre-weighting {self.preweight!r}")
        if self.method not in METHODS:
            raise InputError(f"unknown method {self.method!r}")
        if self.dims not in (2, 3):
            raise InputError("dims must be 2 or 3")
        if self.method.startswith("MCA") and self.dims != 2:
            raise InputError("MCA embeds in 2D only")
        if self.gamma <= 1.0:
            raise InputError(f"gamma must be > 1, got {self.gamma}")

    @classmethod
    def parse(cls, name: str, dims: int = 2, gamma: float = 3.0) -> "EmbeddingSpec":
        """Build from a method name such as ``"ra1-le"`` or ``"RA2-MCA2"``."""
        try:
            pre, method = name.upper().split("-")
        except ValueError:
            raise InputError(f"bad method name {name!r}") from None
        return cls(pre, method, dims, gamma)


@dataclass(frozen=True, eq=False)
class HyperbolicCoords:
    r: np.ndarray
    angles: AngularCoords


def embed(graph: Graph, spec: EmbeddingSpec) -> HyperbolicCoords:
    wg = preweight(graph, spec.preweight)
    if spec.method == "LE":
        angles = le_embedding(wg, spec.dims)
    else:
        angles = AngularCoords(equidistant_angles(mca_ordering(wg, spec.method)))
    return HyperbolicCoords(radial_coordinates(graph.degrees(), spec.gamma), angles)
