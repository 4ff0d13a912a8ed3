"""Unit rescaling and time-delay embedding of scalar series.

The pipeline order is fixed: rescale the raw series into [0, 1] first
(min/max taken over present samples only), then embed, so the resulting
cloud always lies inside the unit D-cube. State vectors that would pick up
a masked coordinate are dropped whole.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, DomainError
from .fbm import TimeSeries


@dataclass
class PointCloud:
    """Delay-embedded state vectors inside the unit D-cube.

    points : (N, D) float array, temporal order preserved
    dim : embedding dimension D
    delay : time delay tau
    source_index : time index t of each row (0-based)
    """

    points: np.ndarray
    dim: int
    delay: int
    source_index: np.ndarray

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.float64)
        self.source_index = np.asarray(self.source_index, dtype=np.int64)

    @property
    def size(self):
        return self.points.shape[0]

    def __len__(self):
        return self.points.shape[0]


def rescale_unit(series):
    """Affinely map the present samples so min -> 0 and max -> 1.

    Masked samples get the same affine map applied (they are dropped later
    anyway); the mask is preserved.
    """
    present = series.values[series.mask]
    if present.size < 2:
        raise DegenerateInputError("need at least two present samples to rescale")
    lo = present.min()
    hi = present.max()
    if hi == lo:
        raise DegenerateInputError("constant series cannot be rescaled to [0, 1]")
    values = (series.values - lo) / (hi - lo)
    return TimeSeries(
        values=values,
        mask=series.mask.copy(),
        hurst=series.hurst,
        seed=series.seed,
        method=series.method,
    )


def delay_embed(series, dim, delay):
    """Map a series to the point cloud of vectors (x_t, x_{t+tau}, ..., x_{t+(D-1)tau}).

    Candidate vectors run over t = 0..T-(D-1)tau-1; any candidate touching a
    masked sample is omitted. dim=1 returns the present samples as 1-vectors.
    """
    if dim < 1:
        raise DomainError(f"dim must be >= 1, got {dim}")
    if delay < 0:
        raise DomainError(f"delay must be >= 0, got {delay}")
    t_len = len(series)
    n_nominal = t_len - (dim - 1) * delay
    if n_nominal < 1:
        raise DomainError(
            f"T - (D-1)*tau = {n_nominal} < 1 (T={t_len}, D={dim}, tau={delay})"
        )
    offsets = np.arange(dim) * delay
    idx = np.arange(n_nominal)[:, None] + offsets[None, :]
    keep = series.mask[idx].all(axis=1)
    points = series.values[idx[keep]]
    return PointCloud(
        points=points,
        dim=dim,
        delay=delay,
        source_index=np.nonzero(keep)[0],
    )
