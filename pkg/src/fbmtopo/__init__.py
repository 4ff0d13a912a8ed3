"""Topological characterization of fractional Brownian motion.

Pipeline: generate fBm -> rescale to [0, 1] -> time-delay embed into the
unit D-cube -> Vietoris-Rips filtration (dim <= 2) -> persistence diagrams
(H0, H1) -> Betti curves and nine scalar topological measures, swept over
Hurst exponent, embedding dimension, delay, and missing-data fraction.
"""

__version__ = "0.1.0"

from .embedding import PointCloud, delay_embed, rescale_unit
from .errors import (
    ContractViolationError,
    DegenerateInputError,
    DomainError,
    FbmTopoError,
    GeneratorError,
    SizeError,
    UndefinedEntropyError,
)
from .fbm import TimeSeries, fgn_covariance, generate_fbm, inject_irregularity
from .measures import (
    BettiCurve,
    TopologicalSummary,
    betti_curve,
    betti_integral,
    critical_scales,
    persistence_entropy,
    summarize,
)
from .persistence import (
    PersistenceDiagram,
    PersistencePair,
    brute_force_reduce,
    compute_h0,
    compute_h1,
)
from .rips import Filtration, SparseDistances, distance_matrix, enumerate_cliques

__all__ = [
    "TimeSeries", "PointCloud", "SparseDistances", "Filtration",
    "PersistencePair", "PersistenceDiagram", "BettiCurve", "TopologicalSummary",
    "generate_fbm", "inject_irregularity", "fgn_covariance",
    "rescale_unit", "delay_embed",
    "distance_matrix", "enumerate_cliques",
    "compute_h0", "compute_h1", "brute_force_reduce",
    "betti_curve", "persistence_entropy", "critical_scales",
    "betti_integral", "summarize",
    "FbmTopoError", "DomainError", "GeneratorError", "DegenerateInputError",
    "ContractViolationError", "SizeError", "UndefinedEntropyError",
]
