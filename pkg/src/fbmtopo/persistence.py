"""Persistence diagrams of the Rips filtration in dimensions 0 and 1.

H0 comes from a union-find sweep over the sorted edges (deaths are the
minimum-spanning-forest edge weights, one essential class per surviving
component). H1 comes from Z2 column reduction over the triangle columns;
1-cycles still alive at epsilon_max are right-censored there, and
zero-persistence pairs are dropped. `brute_force_reduce` is a slow textbook
reduction of the full boundary matrix, kept as a testing oracle.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ._reduction import _DEBRUIJN, h0_merge_edges, h1_reduce
from .errors import SizeError


@dataclass
class PersistencePair:
    """One (appear, disappear) bar; disappear = inf marks an essential class."""

    appear: float
    disappear: float
    dimension: int

    @property
    def essential(self):
        return math.isinf(self.disappear)

    @property
    def lifespan(self):
        return self.disappear - self.appear


@dataclass
class PersistenceDiagram:
    """Multiset of persistence pairs in one homology dimension."""

    dimension: int
    pairs: list
    n_points: int
    epsilon_max: float

    @property
    def n_pairs(self):
        return len(self.pairs)

    def arrays(self):
        """(appear, disappear) as float arrays, inf for essential classes."""
        appear = np.array([p.appear for p in self.pairs], dtype=np.float64)
        disappear = np.array([p.disappear for p in self.pairs], dtype=np.float64)
        return appear, disappear

    def as_multiset(self):
        """Sorted list of (appear, disappear) tuples, for exact comparisons."""
        return sorted((p.appear, p.disappear) for p in self.pairs)


def _canonical_edges(sd):
    order = np.lexsort((sd.edge_j, sd.edge_i, sd.edge_value))
    return sd.edge_i[order], sd.edge_j[order], sd.edge_value[order]


def compute_h0(sd):
    """H0 diagram of the thresholded graph.

    One (0, w) pair per merge edge of the minimum spanning forest plus one
    essential (0, inf) pair per final component; n_0 always equals N.
    """
    ei, ej, ev = _canonical_edges(sd)
    n = sd.n_points
    neg = h0_merge_edges(ei, ej, n)
    pairs = [PersistencePair(0.0, float(w), 0) for w in ev[neg]]
    n_components = n - int(np.count_nonzero(neg))
    pairs.extend(PersistencePair(0.0, math.inf, 0) for _ in range(n_components))
    pairs.sort(key=lambda p: (p.appear, p.disappear))
    return PersistenceDiagram(
        dimension=0, pairs=pairs, n_points=n, epsilon_max=sd.epsilon_max
    )


def compute_h1(f):
    """H1 diagram of a canonically sorted filtration."""
    f.check_sorted()
    ei = np.ascontiguousarray(f.edge_i, dtype=np.int64)
    ej = np.ascontiguousarray(f.edge_j, dtype=np.int64)
    ev = np.asarray(f.edge_value, dtype=np.float64)
    n = f.n_points
    pairs = []
    if len(ev) > 0:
        neg = h0_merge_edges(ei, ej, n)
        b_idx, d_idx, claimed = h1_reduce(ei, ej, n, _DEBRUIJN)
        births = ev[b_idx]
        deaths = ev[d_idx]
        keep = deaths > births
        for b, d in zip(births[keep], deaths[keep]):
            pairs.append(PersistencePair(float(b), float(d), 1))
        # positive edges never killed by a triangle: censor at epsilon_max
        censored = (~claimed) & (~neg)
        for b in ev[censored]:
            if b < f.epsilon_max:
                pairs.append(PersistencePair(float(b), float(f.epsilon_max), 1))
    pairs.sort(key=lambda p: (p.appear, p.disappear))
    return PersistenceDiagram(
        dimension=1, pairs=pairs, n_points=n, epsilon_max=f.epsilon_max
    )


def brute_force_reduce(f, limit=5000):
    """Textbook full-boundary-matrix reduction; returns (d0, d1) diagrams.

    Builds every simplex explicitly and reduces columns left to right, so it
    is only usable on small inputs (guarded at `limit` total simplices).
    Conventions (essential H0 bar, censoring at epsilon_max, dropping
    zero-persistence pairs) match the fast path exactly.
    """
    simplices = f.simplices(limit=limit)
    index = {s[0]: idx for idx, s in enumerate(simplices)}
    cols = []
    pivot_owner = {}
    paired_with = {}
    for idx, (verts, dim, _value) in enumerate(simplices):
        if dim == 0:
            cols.append(frozenset())
            continue
        col = set()
        for drop in range(len(verts)):
            face = verts[:drop] + verts[drop + 1:]
            if len(face) == 1:
                col ^= {index[(face[0],)]}
            else:
                col ^= {index[face]}
        while col:
            low = max(col)
            owner = pivot_owner.get(low)
            if owner is None:
                pivot_owner[low] = idx
                paired_with[low] = idx
                break
            col ^= cols[owner]
        cols.append(frozenset(col))
    d0_pairs = []
    d1_pairs = []
    for idx, (verts, dim, value) in enumerate(simplices):
        if cols[idx]:
            continue  # negative simplex, creates nothing
        if idx in paired_with:
            death = simplices[paired_with[idx]][2]
            if dim == 0:
                d0_pairs.append(PersistencePair(0.0, float(death), 0))
            elif dim == 1 and death > value:
                d1_pairs.append(PersistencePair(float(value), float(death), 1))
        else:
            if dim == 0:
                d0_pairs.append(PersistencePair(0.0, math.inf, 0))
            elif dim == 1 and value < f.epsilon_max:
                d1_pairs.append(PersistencePair(float(value), float(f.epsilon_max), 1))
    d0_pairs.sort(key=lambda p: (p.appear, p.disappear))
    d1_pairs.sort(key=lambda p: (p.appear, p.disappear))
    d0 = PersistenceDiagram(0, d0_pairs, f.n_points, f.epsilon_max)
    d1 = PersistenceDiagram(1, d1_pairs, f.n_points, f.epsilon_max)
    return d0, d1
