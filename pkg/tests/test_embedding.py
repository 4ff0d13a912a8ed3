import numpy as np
import pytest

from fbmtopo import (
    DegenerateInputError,
    DomainError,
    TimeSeries,
    delay_embed,
    generate_fbm,
    inject_irregularity,
    rescale_unit,
)


def make_series(values, mask=None):
    values = np.asarray(values, dtype=float)
    if mask is None:
        mask = np.ones(len(values), dtype=bool)
    return TimeSeries(values=values, mask=np.asarray(mask, bool),
                      hurst=0.5, seed=0, method="spectral_fgn")


def test_rescale_minmax():
    out = rescale_unit(make_series([2, 4, 6]))
    assert np.allclose(out.values, [0, 0.5, 1])


def test_rescale_identity():
    out = rescale_unit(make_series([0, 1]))
    assert np.allclose(out.values, [0, 1])


def test_rescale_constant_fails():
    with pytest.raises(DegenerateInputError):
        rescale_unit(make_series([5, 5, 5]))


def test_rescale_ignores_masked_extremes():
    # the masked 100 must not stretch the range
    out = rescale_unit(make_series([2, 100, 4, 6], mask=[1, 0, 1, 1]))
    assert np.allclose(out.values[[0, 2, 3]], [0, 0.5, 1])


def test_embed_single_point():
    cloud = delay_embed(make_series([0.0, 0.1, 0.2, 0.3, 0.4]), dim=3, delay=2)
    assert cloud.size == 1
    assert np.allclose(cloud.points, [[0.0, 0.2, 0.4]])


def test_embed_size_formula():
    for dim in (1, 2, 3, 5):
        for delay in (1, 2, 7):
            t_len = 64
            cloud = delay_embed(make_series(np.linspace(0, 1, t_len)), dim, delay)
            assert cloud.size == t_len - (dim - 1) * delay


def test_embed_masked_drops_whole_vectors():
    mask = [1, 1, 1, 0, 1, 1]
    cloud = delay_embed(make_series(np.arange(6) / 5, mask), dim=2, delay=1)
    # candidates t=0..4; t=2 (uses sample 3) and t=3 dropped
    assert cloud.size == 3
    assert list(cloud.source_index) == [0, 1, 4]


def test_embed_dim1_is_identity():
    series = make_series(np.linspace(0, 1, 20))
    cloud = delay_embed(series, dim=1, delay=13)
    assert cloud.size == 20
    assert np.allclose(cloud.points[:, 0], series.values)


def test_embed_tau0_on_diagonal():
    cloud = delay_embed(make_series(np.linspace(0, 1, 9)), dim=4, delay=0)
    assert cloud.size == 9
    assert np.allclose(cloud.points, cloud.points[:, :1])


def test_embed_domain_errors():
    series = make_series(np.linspace(0, 1, 10))
    with pytest.raises(DomainError):
        delay_embed(series, dim=0, delay=1)
    with pytest.raises(DomainError):
        delay_embed(series, dim=2, delay=-1)
    with pytest.raises(DomainError):
        delay_embed(series, dim=3, delay=5)  # 10 - 2*5 = 0 < 1


def test_monotone_masking():
    rng = np.random.default_rng(3)
    values = rng.random(50)
    mask = np.ones(50, bool)
    prev = delay_embed(make_series(values, mask), 3, 2).size
    for idx in rng.choice(50, size=10, replace=False):
        mask[idx] = False
        size = delay_embed(make_series(values, mask), 3, 2).size
        assert size <= prev
        prev = size


def test_missing_vector_accounting():
    series = generate_fbm(0.5, 200, seed=8)
    irregular = inject_irregularity(series, 0.06, seed=4)
    t_missing = irregular.n_missing
    sizes = {}
    for dim in (1, 2, 5):
        cloud = delay_embed(irregular, dim, 1)
        n_nominal = 200 - (dim - 1)
        sizes[dim] = n_nominal - cloud.size
        assert sizes[dim] >= 0
    # one missing sample kills exactly one vector at D=1, at least that many above
    assert sizes[1] == t_missing
    assert sizes[2] >= sizes[1]
    assert sizes[5] >= sizes[2]
