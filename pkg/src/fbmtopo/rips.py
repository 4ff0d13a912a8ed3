"""Thresholded Vietoris-Rips filtration (simplices of dimension <= 2).

The threshold convention is closed: a pair is kept when its Euclidean
distance is <= epsilon_max. Triangles carry the maximum of their three edge
lengths as filtration value. The canonical simplex order is
(value, dimension, lexicographic vertex tuple); edges are stored explicitly
in that order, triangles are enumerated on demand from the edge adjacency
(there can be tens of millions of them at production sizes, so the
filtration does not materialize them unless asked).
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .errors import ContractViolationError, DomainError, SizeError

MAX_POINTS = 8192


@dataclass
class SparseDistances:
    """All point pairs within epsilon_max, as parallel arrays.

    edge_i, edge_j : int arrays with edge_i < edge_j elementwise
    edge_value : Euclidean distances, every entry <= epsilon_max
    n_points : number of (deduplicated) points
    """

    edge_i: np.ndarray
    edge_j: np.ndarray
    edge_value: np.ndarray
    n_points: int
    epsilon_max: float

    @property
    def n_edges(self):
        return len(self.edge_value)

    def edges(self):
        """Iterate (i, j, d_ij) tuples."""
        return zip(self.edge_i.tolist(), self.edge_j.tolist(), self.edge_value.tolist())


@dataclass
class Filtration:
    """Canonically sorted dim <= 2 flag filtration over a thresholded graph.

    Edges are sorted by (value, i, j); triangle (i, j, k) exists whenever its
    three edges do, with value = max of the three edge values. `simplices()`
    materializes the full sorted simplex list for small instances.
    """

    edge_i: np.ndarray
    edge_j: np.ndarray
    edge_value: np.ndarray
    n_points: int
    epsilon_max: float

    @property
    def n_edges(self):
        return len(self.edge_value)

    def check_sorted(self):
        """Raise unless edges are in canonical (value, i, j) order."""
        v, i, j = self.edge_value, self.edge_i, self.edge_j
        if len(v) < 2:
            return
        prev = np.lexsort((j, i, v))
        if not np.array_equal(prev, np.arange(len(v))):
            raise ContractViolationError("filtration edges are not canonically sorted")

    def count_simplices(self):
        """Total number of simplices (vertices + edges + triangles)."""
        return self.n_points + self.n_edges + sum(1 for _ in self._triangles())

    def _triangles(self):
        # walk edges in canonical order; a triangle is reported at its
        # canonically latest edge, so values come out max-of-three for free
        adj = [set() for _ in range(self.n_points)]
        for e in range(self.n_edges):
            i = int(self.edge_i[e])
            j = int(self.edge_j[e])
            for k in sorted(adj[i] & adj[j]):
                verts = tuple(sorted((i, j, k)))
                yield verts, float(self.edge_value[e])
            adj[i].add(j)
            adj[j].add(i)

    def simplices(self, limit=None):
        """Materialize the sorted simplex list as (vertices, dim, value) tuples.

        Guarded: raises SizeError if the total count exceeds `limit`
        (default 5000).
        """
        if limit is None:
            limit = 5000
        out = [((v,), 0, 0.0) for v in range(self.n_points)]
        for e in range(self.n_edges):
            out.append(
                ((int(self.edge_i[e]), int(self.edge_j[e])), 1, float(self.edge_value[e]))
            )
        for verts, value in self._triangles():
            out.append((verts, 2, value))
            if len(out) > limit:
                raise SizeError(f"filtration exceeds {limit} simplices")
        if len(out) > limit:
            raise SizeError(f"filtration exceeds {limit} simplices")
        out.sort(key=lambda s: (s[2], s[1], s[0]))
        return out


def distance_matrix(pcd, epsilon_max):
    """Collect exactly the point pairs with Euclidean distance <= epsilon_max.

    Exact duplicate points are merged first (keeping first occurrences) with
    a warning, so downstream diagrams never see zero-length edges.
    """
    if epsilon_max <= 0:
        raise DomainError(f"epsilon_max must be positive, got {epsilon_max}")
    points = np.asarray(pcd.points, dtype=np.float64)
    if points.ndim == 1:
        points = points[:, None]
    if len(points) == 0:
        raise DomainError("empty point cloud")
    _, first = np.unique(points, axis=0, return_index=True)
    if len(first) < len(points):
        warnings.warn(
            f"merged {len(points) - len(first)} duplicate points before filtration",
            stacklevel=2,
        )
        points = points[np.sort(first)]
    n = len(points)
    if n > MAX_POINTS:
        raise SizeError(f"cloud has {n} points, guard is {MAX_POINTS}")
    if n == 1:
        pairs = np.empty((0, 2), dtype=np.int64)
    else:
        pairs = cKDTree(points).query_pairs(epsilon_max, output_type="ndarray")
    ei = np.minimum(pairs[:, 0], pairs[:, 1]).astype(np.int64)
    ej = np.maximum(pairs[:, 0], pairs[:, 1]).astype(np.int64)
    dist = np.sqrt(((points[ei] - points[ej]) ** 2).sum(axis=1))
    return SparseDistances(
        edge_i=ei,
        edge_j=ej,
        edge_value=dist,
        n_points=n,
        epsilon_max=float(epsilon_max),
    )


def enumerate_cliques(sd):
    """Build the canonical filtration from sparse distances.

    Edges are sorted by (value, i, j); triangles are implied by the edge set
    and enumerated lazily by the filtration object.
    """
    order = np.lexsort((sd.edge_j, sd.edge_i, sd.edge_value))
    return Filtration(
        edge_i=sd.edge_i[order],
        edge_j=sd.edge_j[order],
        edge_value=sd.edge_value[order],
        n_points=sd.n_points,
        epsilon_max=sd.epsilon_max,
    )
