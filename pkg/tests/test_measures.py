import math

import numpy as np
import pytest

from fbmtopo import (
    ContractViolationError,
    PersistenceDiagram,
    PersistencePair,
    UndefinedEntropyError,
    betti_curve,
    betti_integral,
    critical_scales,
    persistence_entropy,
    summarize,
)


def diagram(pairs, dimension, n_points=10, eps_max=5.0):
    built = [PersistencePair(a, d, dimension) for a, d in pairs]
    return PersistenceDiagram(dimension=dimension, pairs=built,
                              n_points=n_points, epsilon_max=eps_max)


def test_betti_curve_counts_alive():
    d0 = diagram([(0, 1), (0, 2), (0, math.inf)], 0, n_points=3)
    curve = betti_curve(d0, [1.5 * 3])
    assert curve.values[0] == pytest.approx(2 / 3)


def test_betti_curve_empty_diagram():
    d1 = diagram([], 1, n_points=4)
    curve = betti_curve(d1, np.linspace(0, 10, 11))
    assert np.all(curve.values == 0)


def test_betti_curve_half_open_boundary():
    d1 = diagram([(1, 2)], 1, n_points=1)
    curve = betti_curve(d1, [1.0, 1.5, 2.0])
    assert list(curve.values) == [1, 1, 0]


def test_entropy_uniform():
    d1 = diagram([(0, 1), (2, 3)], 1)
    assert persistence_entropy(d1) == pytest.approx(math.log(2))


def test_entropy_single_bar():
    d1 = diagram([(0.2, 0.9)], 1)
    assert persistence_entropy(d1) == pytest.approx(0.0)


def test_entropy_quarter_three_quarters():
    # lifespans 1 and 3: -(1/4 ln 1/4 + 3/4 ln 3/4)
    d1 = diagram([(0, 1), (0, 3)], 1)
    assert persistence_entropy(d1) == pytest.approx(0.5623351446188083, abs=1e-12)


def test_entropy_truncates_essential_bar():
    d0 = diagram([(0, 1), (0, math.inf)], 0, eps_max=3.0)
    # essential bar counts as lifespan 3: -(1/4 ln 1/4 + 3/4 ln 3/4)
    assert persistence_entropy(d0) == pytest.approx(0.5623351446188083, abs=1e-12)


def test_entropy_undefined():
    with pytest.raises(UndefinedEntropyError):
        persistence_entropy(diagram([], 1))
    with pytest.raises(UndefinedEntropyError):
        persistence_entropy(diagram([(1, 1), (2, 2)], 1))


def test_entropy_bounded_by_log_n():
    rng = np.random.default_rng(7)
    pairs = [(a, a + s) for a, s in zip(rng.random(20), rng.random(20) + 0.01)]
    d1 = diagram(pairs, 1)
    assert persistence_entropy(d1) <= math.log(len(pairs)) + 1e-12


def test_critical_scales_d1():
    d1 = diagram([(1, 2), (1.5, 3)], 1)
    appear, disappear, maximize = critical_scales(d1)
    assert (appear, disappear, maximize) == (1.0, 3.0, 1.5)


def test_critical_scales_d1_single_bar():
    assert critical_scales(diagram([(1, 2)], 1)) == (1.0, 2.0, 1.0)


def test_critical_scales_d1_empty_is_absent():
    assert critical_scales(diagram([], 1)) == (None, None, None)


def test_critical_scales_d0():
    d0 = diagram([(0, 1), (0, 2), (0, math.inf)], 0)
    appear, disappear, maximize = critical_scales(d0)
    assert appear == 0.0
    assert maximize == 0.0
    assert disappear == 2.0


def test_maximize_tie_uses_smallest_scale():
    # two disjoint windows both reach beta = 2; the first one wins
    d1 = diagram([(1, 3), (2, 3), (5, 7), (6, 7)], 1)
    assert critical_scales(d1)[2] == 2.0


def test_maximize_death_before_birth_at_tie():
    # at scale 2 one bar dies and another is born: count stays 1, so the
    # peak of 2 is only at 1.5
    d1 = diagram([(1, 2), (1.5, 4), (2, 3)], 1)
    assert critical_scales(d1)[2] == 1.5


def test_betti_integral_d1():
    d1 = diagram([(1, 2), (1.5, 3)], 1)
    assert betti_integral(d1) == pytest.approx(2.5)


def test_betti_integral_d0_with_essential():
    d0 = diagram([(0, 1), (0, 2), (0, math.inf)], 0)
    assert betti_integral(d0) == pytest.approx(5.0)


def test_betti_integral_empty():
    assert betti_integral(diagram([], 1)) == 0.0


def test_summarize_scales_with_n():
    d0 = diagram([(0, 1), (0, 2), (0, math.inf)], 0, n_points=3)
    d1 = diagram([(1, 2), (1.5, 3)], 1, n_points=3)
    small = summarize(d0, d1, 3)
    big = summarize(d0, d1, 6)
    assert big.eta0_disappear == pytest.approx(2 * small.eta0_disappear)
    assert big.eta1_maximize == pytest.approx(2 * small.eta1_maximize)
    # integral and entropy measures do not change with the normalization
    assert big.B0 == small.B0
    assert big.B1 == small.B1
    assert big.E0 == small.E0
    assert big.E1 == small.E1
    assert small.n1 == 2


def test_summarize_empty_d1_absent():
    d0 = diagram([(0, 1), (0, math.inf)], 0, n_points=2)
    d1 = diagram([], 1, n_points=2)
    summary = summarize(d0, d1, 2)
    assert summary.eta1_appear is None
    assert summary.eta1_disappear is None
    assert summary.eta1_maximize is None
    assert summary.E1 is None
    assert summary.B1 == 0.0
    assert summary.n1 == 0


def test_summarize_mismatched_diagrams():
    d0 = diagram([(0, math.inf)], 0, n_points=1)
    d1 = diagram([], 1, n_points=2)
    with pytest.raises(ContractViolationError):
        summarize(d0, d1, 2)


def test_b1_equals_total_persistence():
    rng = np.random.default_rng(8)
    pairs = [(a, a + s) for a, s in zip(rng.random(15), rng.random(15))]
    d1 = diagram(pairs, 1)
    assert betti_integral(d1) == pytest.approx(sum(d - a for a, d in pairs))
