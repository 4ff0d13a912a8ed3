"""Betti curves and the nine scalar topological measures.

Scale-valued measures are reported in normalized units eta = N * epsilon,
where N is the nominal cloud size T - (D-1)*tau (the configured size, not
the post-irregularity count). Betti curves use beta_tilde = beta / N with
the same N. The curve integral B_d is computed on the raw epsilon axis,
which equals the (eta, beta_tilde) axis value because the two axis scalings
cancel; persistence entropy is dimensionless either way. The alive
convention is half-open: a bar counts at scale eps when appear <= eps <
disappear.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError, DomainError, UndefinedEntropyError


@dataclass
class BettiCurve:
    """Normalized Betti curve sampled on an ascending eta grid."""

    dimension: int
    grid: np.ndarray
    values: np.ndarray
    n_points: int


@dataclass
class TopologicalSummary:
    """The nine measures of one realization, scale measures in eta units.

    eta1_appear / eta1_disappear / eta1_maximize and E1 are None when the
    H1 diagram is empty (absent, not zero).
    """

    eta0_disappear: float
    B0: float
    E0: float
    eta1_appear: float
    eta1_disappear: float
    eta1_maximize: float
    B1: float
    E1: float
    n1: int
    hurst: float = None
    dim: int = None
    delay: int = None
    q: float = None
    seed: int = None

    MEASURE_NAMES = (
        "eta0_disappear", "B0", "E0",
        "eta1_appear", "eta1_disappear", "eta1_maximize",
        "B1", "E1", "n1",
    )

    def measures(self):
        """Dict of the nine measures, absent values as None."""
        return {name: getattr(self, name) for name in self.MEASURE_NAMES}


def _event_arrays(diag, truncate_essential=False):
    appear, disappear = diag.arrays()
    if truncate_essential:
        disappear = np.minimum(disappear, diag.epsilon_max)
    return appear, disappear


def betti_curve(diag, grid, n_nominal=None):
    """Evaluate beta_tilde_d on an ascending eta grid.

    beta_d(eta) counts bars with appear <= eta/N < disappear; essential bars
    stay alive through epsilon_max. `n_nominal` is the normalizing N
    (defaults to the diagram's own point count).
    """
    grid = np.asarray(grid, dtype=np.float64)
    if len(grid) > 1 and np.any(np.diff(grid) < 0):
        raise DomainError("grid must be ascending")
    n = diag.n_points if n_nominal is None else int(n_nominal)
    appear, disappear = _event_arrays(diag)
    eps = grid / n
    alive = (
        np.searchsorted(np.sort(appear), eps, side="right")
        - np.searchsorted(np.sort(disappear[np.isfinite(disappear)]), eps, side="right")
    )
    return BettiCurve(
        dimension=diag.dimension,
        grid=grid,
        values=alive / n,
        n_points=n,
    )


def persistence_entropy(diag):
    """Shannon entropy of normalized bar lifespans (natural log).

    The essential H0 bar is truncated at epsilon_max for this computation
    only. Zero-lifespan bars contribute nothing.
    """
    if diag.n_pairs == 0:
        raise UndefinedEntropyError("empty diagram has no entropy")
    appear, disappear = _event_arrays(diag, truncate_essential=True)
    spans = disappear - appear
    spans = spans[spans > 0]
    total = spans.sum()
    if total <= 0:
        raise UndefinedEntropyError("all lifespans are zero")
    p = spans / total
    return float(-(p * np.log(p)).sum())


def critical_scales(diag):
    """(appear, disappear, maximize) critical scales in raw epsilon units.

    d=0: appear = maximize = 0, disappear = largest finite merge death.
    d=1: appear = first birth, disappear = last death (censored bars die at
    epsilon_max), maximize = smallest scale attaining the global maximum of
    beta_1, found exactly from the event values. Empty d=1 diagram gives
    (None, None, None).
    """
    appear, disappear = _event_arrays(diag)
    if diag.dimension == 0:
        finite = disappear[np.isfinite(disappear)]
        last = float(finite.max()) if len(finite) else 0.0
        return 0.0, last, 0.0
    if diag.n_pairs == 0:
        return None, None, None
    first = float(appear.min())
    last = float(disappear.max())
    # sweep events in value order, deaths applied before births at ties
    # (half-open alive convention), track the first scale hitting the max
    events = np.concatenate([appear, disappear])
    order = np.argsort(events, kind="stable")
    is_birth = np.concatenate(
        [np.ones(len(appear), bool), np.zeros(len(disappear), bool)]
    )[order]
    events = events[order]
    best = 0
    best_at = first
    count = 0
    idx = 0
    m = len(events)
    while idx < m:
        value = events[idx]
        while idx < m and events[idx] == value:
            count += 1 if is_birth[idx] else -1
            idx += 1
        if count > best:
            best = count
            best_at = float(value)
    return first, last, best_at


def betti_integral(diag):
    """Exact piecewise-constant integral of beta_d over [appear, disappear].

    Equals the total persistence for d=1; for d=0 each essential component
    contributes the full window on top of the finite lifespans.
    """
    appear, disappear = _event_arrays(diag)
    finite = np.isfinite(disappear)
    total = float((disappear[finite] - appear[finite]).sum())
    n_essential = int(np.count_nonzero(~finite))
    if n_essential:
        _, last, _ = critical_scales(diag) if diag.dimension == 0 else (None, 0.0, None)
        total += n_essential * last
    return total


def summarize(d0, d1, n_nominal, hurst=None, dim=None, delay=None, q=None, seed=None):
    """Collapse the two diagrams into the nine measures, eta = N * epsilon.

    `n_nominal` is the configured cloud size T - (D-1)*tau; diagrams carry
    the post-irregularity count. B_d and E_d are unaffected by the
    normalization; when D_1 is empty its scales and E1 are None, B1 = 0.
    """
    if d0.n_points != d1.n_points:
        raise ContractViolationError("diagrams come from different clouds")
    n = int(n_nominal)
    _, d0_disappear, _ = critical_scales(d0)
    summary = TopologicalSummary(
        eta0_disappear=n * d0_disappear,
        B0=betti_integral(d0),
        E0=persistence_entropy(d0),
        eta1_appear=None,
        eta1_disappear=None,
        eta1_maximize=None,
        B1=0.0,
        E1=None,
        n1=d1.n_pairs,
        hurst=hurst,
        dim=dim,
        delay=delay,
        q=q,
        seed=seed,
    )
    if d1.n_pairs > 0:
        a1, z1, m1 = critical_scales(d1)
        summary.eta1_appear = n * a1
        summary.eta1_disappear = n * z1
        summary.eta1_maximize = n * m1
        summary.B1 = betti_integral(d1)
        summary.E1 = persistence_entropy(d1)
    return summary
