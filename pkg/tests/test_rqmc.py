import numpy as np
import pytest
from scipy.special import ndtr
from scipy.stats import kstest

from rqmc import sobol_points, scramble, rqmc_normals, mc_normals, to_gaussian, norm_sf, norm_cdf, \
    load_direction_numbers, LowDiscrepancySet, MAX_DIM
from utils.errors import UnsupportedDimensionError, DomainError


def _strata_counts(u, m):
    """ points per interval [k 2^-m, (k+1) 2^-m) in every column """
    cells = np.floor(u * 2 ** m).astype(int)
    return np.stack([np.bincount(cells[:, j], minlength=2 ** m) for j in range(u.shape[1])])


def test_table_covers_65_dimensions():
    table = load_direction_numbers()
    assert table.max_dim == MAX_DIM == 65
    # every column of every generator matrix has its leading bit on the diagonal
    for k in range(32):
        assert np.all(table.V[:, k] >> np.uint64(31 - k) & np.uint64(1) == 1)


def test_first_points():
    pts = sobol_points(4, 2)
    np.testing.assert_allclose(pts.values[1:], [[0.5, 0.5], [0.25, 0.75], [0.75, 0.25]])
    assert pts.values[0, 0] > 0.0


@pytest.mark.parametrize("m", [6, 10])
def test_unscrambled_points_are_stratified(m):
    pts = sobol_points(2 ** m, MAX_DIM)
    assert np.all(_strata_counts(pts.values, m) == 1)


@pytest.mark.parametrize("m", [6, 10])
def test_scrambling_keeps_stratification(m):
    pts = scramble(sobol_points(2 ** m, MAX_DIM - 1), seed=11)
    assert pts.scrambled and pts.bits == 53
    assert np.all(_strata_counts(pts.values, m) == 1)
    assert np.all((pts.values > 0) & (pts.values < 1))


def test_scrambling_keeps_two_dimensional_net():
    m = 8
    u = scramble(sobol_points(2 ** m, 2), seed=3).values
    for a in range(m + 1):
        cells = np.floor(u[:, 0] * 2 ** a).astype(int) * 2 ** (m - a) + np.floor(u[:, 1] * 2 ** (m - a)).astype(int)
        assert np.all(np.bincount(cells, minlength=2 ** m) == 1)


def test_scrambled_points_look_uniform():
    u = scramble(sobol_points(1024, 5), seed=2024).values
    for j in range(5):
        assert kstest(u[:, j], 'uniform').pvalue > 0.01


def test_scramble_is_deterministic_and_seed_dependent():
    pts = sobol_points(64, 4)
    a, b, c = scramble(pts, 5), scramble(pts, 5), scramble(pts, 6)
    np.testing.assert_array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)


def test_scramble_rejects_scrambled_input():
    with pytest.raises(DomainError):
        scramble(scramble(sobol_points(8, 1), 1), 2)


@pytest.mark.parametrize("s", [0, 66])
def test_unsupported_dimension(s):
    with pytest.raises(UnsupportedDimensionError):
        sobol_points(8, s)


def test_rqmc_mean_is_unbiased():
    means = [rqmc_normals(256, 3, seed).values.mean(axis=0) for seed in range(40)]
    assert np.all(np.abs(np.mean(means, axis=0)) < 4 * np.std(means, axis=0, ddof=1) / np.sqrt(40) + 1e-12)


def test_inverse_cdf_round_trip():
    pts = scramble(sobol_points(512, 3), seed=9)
    z = to_gaussian(pts).values
    np.testing.assert_allclose(ndtr(z), pts.values, rtol=1e-9, atol=1e-15)


def test_to_gaussian_domain():
    bad = LowDiscrepancySet(values=np.array([[0.0], [0.5]]), digits=np.zeros((2, 1), dtype=np.uint64))
    with pytest.raises(DomainError):
        to_gaussian(bad)


def test_mc_normals():
    z = mc_normals(4096, 2, seed=1).values
    assert z.shape == (4096, 2)
    np.testing.assert_array_equal(z, mc_normals(4096, 2, seed=1).values)
    assert kstest(z[:, 0], 'norm').pvalue > 0.001
    assert not np.array_equal(z, mc_normals(4096, 2, seed=2).values)


def test_upper_tail_is_accurate():
    assert norm_sf(40.0) > 0.0
    np.testing.assert_allclose(norm_sf(np.array([-1.0, 0.0, 2.0])), 1 - norm_cdf(np.array([-1.0, 0.0, 2.0])))
