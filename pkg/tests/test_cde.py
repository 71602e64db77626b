import numpy as np
import pytest
from scipy.stats import lognorm
from sklearn.neighbors import KernelDensity

from cde import cde_curve, cde_construction, cde_replicates, default_grid, mise, neg_log2, write_curves, \
    DensityEstimate, MISE_CAP
from models import LognormalSumSpec, lognormal_sum, modeling
from rqmc import mc_normals
from utils.errors import InvalidInputError, UnknownConstructionError


def test_default_grid():
    grid = default_grid()
    assert grid.size == 200 and grid[0] == 0.1 and grid[-1] == 50.0


def test_one_dimensional_curve_is_exact():
    spec = LognormalSumSpec(mu=np.array([0.2]), Sigma=np.array([[0.25]]))
    R = cde_construction(spec, 'direct')
    grid = np.linspace(0.1, 6.0, 40)
    curve = cde_curve(spec, R, grid, n=64, seed=1)
    np.testing.assert_allclose(curve, lognorm.pdf(grid, s=0.5, scale=np.exp(0.2)), rtol=1e-9)


def test_warm_start_does_not_change_curve():
    spec = modeling.lognormal_autocorr(rho=0.5, d=4)
    R = cde_construction(spec, 'direct')
    grid = np.linspace(0.5, 20.0, 30)
    np.testing.assert_allclose(cde_curve(spec, R, grid, 128, 3, warm_start=True),
                               cde_curve(spec, R, grid, 128, 3, warm_start=False), rtol=1e-9, atol=1e-14)


@pytest.mark.parametrize("method", ['direct', 'cas'])
def test_constructions_factor_sigma(method):
    spec = modeling.lognormal_autocorr(rho=-0.5, d=5)
    R = cde_construction(spec, method, M=64, seed=2)
    assert R.residual() < 1e-10
    assert np.all(R.first_column >= -1e-12)


def test_direct_hides_one_variable():
    spec = modeling.lognormal_autocorr(rho=0.5, d=5)
    R = cde_construction(spec, 'direct').R
    np.testing.assert_array_equal(R[1:, 0], np.zeros(4))


def test_unknown_method():
    with pytest.raises(UnknownConstructionError):
        cde_construction(modeling.lognormal_autocorr(), 'kde')


def test_curve_matches_kernel_density():
    spec = modeling.lognormal_autocorr(rho=0.5, d=3)
    R = cde_construction(spec, 'cas', M=64, seed=4)
    grid = np.linspace(1.0, 8.0, 8)
    curve = np.mean([cde_curve(spec, R, grid, 1024, seed) for seed in range(5)], axis=0)
    samples = lognormal_sum(spec, np.linalg.cholesky(spec.Sigma), mc_normals(200000, 3, seed=9).values)
    kde = KernelDensity(bandwidth=0.05).fit(samples[:, None])
    oracle = np.exp(kde.score_samples(grid[:, None]))
    np.testing.assert_allclose(curve, oracle, rtol=0.05, atol=2e-3)


def test_mise_and_cap():
    grid = np.linspace(0.0, 1.0, 11)
    same = np.tile(np.linspace(0.0, 2.0, 11), (4, 1))
    assert mise(same, grid) == 0.0
    assert neg_log2(0.0) == MISE_CAP
    curves = np.vstack([np.ones(11), 3 * np.ones(11)])
    # variance 2 everywhere on a unit interval
    assert mise(curves, grid) == pytest.approx(2.0)
    assert neg_log2(0.25) == pytest.approx(2.0)
    with pytest.raises(InvalidInputError):
        mise(np.ones((1, 11)), grid)


def test_grid_must_increase():
    spec = modeling.lognormal_autocorr(d=2)
    with pytest.raises(InvalidInputError):
        cde_curve(spec, cde_construction(spec, 'direct'), np.array([1.0, 0.5]), 8, 0)


def test_replicates_and_curve_file(tmp_path):
    spec = modeling.lognormal_autocorr(rho=0.5, d=3)
    grid = np.linspace(0.5, 10.0, 12)
    est = cde_replicates(spec, cde_construction(spec, 'direct'), grid, 64, 3, base_seed=5, tag='direct')
    assert isinstance(est, DensityEstimate)
    assert est.curves.shape == (3, 12)
    assert est.neg_log2_mise == pytest.approx(-np.log2(est.mise))
    again = cde_replicates(spec, cde_construction(spec, 'direct'), grid, 64, 3, base_seed=5, tag='direct')
    np.testing.assert_array_equal(est.curves, again.curves)
    path = tmp_path / 'out' / 'curve.csv'
    write_curves(est, str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == 'x,mean_density,var_density'
    assert len(lines) == 13
    assert float(lines[1].split(',')[1]) == est.mean[0]


@pytest.mark.slow
@pytest.mark.parametrize("rho", [-0.5, 0.5])
def test_cas_beats_direct(rho):
    spec = modeling.lognormal_autocorr(rho=rho, d=10)
    grid = default_grid()
    score = {}
    for method in ('direct', 'cas'):
        R = cde_construction(spec, method, seed=7)
        score[method] = cde_replicates(spec, R, grid, 2 ** 10, 50, base_seed=7, tag=method).neg_log2_mise
    assert score['cas'] >= score['direct'] + 3
