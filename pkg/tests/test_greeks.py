import dataclasses

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.stats import norm

from greeks import KINDS, GreekKind, greek_factor, greek_pathwise, sov_transform, sov_map, preint_greek, \
    greek_rotation, pca_direction
from linalg import bm_construction
from models import GbmSpec, asian_call, average_price
from rqmc import rqmc_normals


def _std(spec):
    return bm_construction(spec.d, spec.dt, 'standard')


def price(spec, Z):
    return spec.discount * asian_call(spec, _std(spec), Z).mean()


def pathwise_oracle(spec, kind, R, z_rest):
    """ E[greek | z_{2:d}] by quadrature over z1 above the exercise boundary """
    full = lambda z: np.concatenate([[z], z_rest])[None, :]
    h = lambda z: average_price(spec, R, full(z))[0] - spec.K
    if h(12.0) <= 0:
        return 0.0
    alpha = -12.0 if h(-12.0) >= 0 else brentq(h, -12.0, 12.0, xtol=1e-14)
    g = lambda z: greek_factor(spec, kind, R, full(z))[0][0] * norm.pdf(z)
    return quad(g, alpha, 12.0, epsabs=0.0, epsrel=1e-11, limit=200)[0]


BUMPS = {
    'delta': lambda s, h: dataclasses.replace(s, S0=s.S0 + h),
    'rho': lambda s, h: dataclasses.replace(s, r=s.r + h),
    'vega': lambda s, h: dataclasses.replace(s, sigma=s.sigma + h),
    'theta': lambda s, h: dataclasses.replace(s, T=s.T - h),
}
STEPS = {'delta': 1e-2, 'rho': 1e-5, 'vega': 1e-5, 'theta': 1e-5}


def test_kinds():
    assert KINDS == ('delta', 'gamma', 'rho', 'theta', 'vega')
    assert GreekKind('vega') is GreekKind.VEGA


@pytest.mark.parametrize("kind", ['delta', 'rho', 'vega', 'theta'])
def test_pathwise_matches_finite_difference_of_price(kind):
    spec = GbmSpec(d=8, K=100.0)
    Z = rqmc_normals(2 ** 14, spec.d, seed=3).values
    h = STEPS[kind]
    fd = (price(BUMPS[kind](spec, h), Z) - price(BUMPS[kind](spec, -h), Z)) / (2 * h)
    pw = greek_pathwise(spec, kind, _std(spec), Z).mean()
    assert pw == pytest.approx(fd, rel=1e-3)


@pytest.mark.parametrize("K", [90.0, 100.0, 110.0])
def test_preintegrated_gamma_is_derivative_of_preintegrated_delta(K):
    spec = GbmSpec(d=8, K=K)
    z_rest = np.random.default_rng(0).standard_normal((20, spec.d - 1))
    h = 1e-3
    up = preint_greek(dataclasses.replace(spec, S0=spec.S0 + h), 'delta', _std(spec), z_rest)
    dn = preint_greek(dataclasses.replace(spec, S0=spec.S0 - h), 'delta', _std(spec), z_rest)
    gamma = preint_greek(spec, 'gamma', _std(spec), z_rest)
    np.testing.assert_allclose(gamma, (up - dn) / (2 * h), rtol=1e-5, atol=1e-9)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("construction", ['standard', 'pca'])
def test_preintegrated_greek_matches_quadrature(kind, construction):
    spec = GbmSpec(d=6, K=100.0)
    R = bm_construction(spec.d, spec.dt, construction)
    z_rest = np.random.default_rng(1).standard_normal((10, spec.d - 1))
    got = preint_greek(spec, kind, R, z_rest)
    for i in range(10):
        assert got[i] == pytest.approx(pathwise_oracle(spec, kind, R, z_rest[i]), rel=1e-6, abs=1e-10)


@pytest.mark.parametrize("kind", ['delta', 'gamma', 'vega'])
def test_sov_transform_keeps_conditional_expectation(kind):
    spec = GbmSpec(d=4, K=105.0)
    R = _std(spec)
    z_rest = np.random.default_rng(2).standard_normal((5, 3))
    expected = preint_greek(spec, kind, R, z_rest)
    for i in range(5):
        f = lambda z: sov_transform(kind, spec, R, np.concatenate([[z], z_rest[i]])[None, :])[0] * norm.pdf(z)
        got = quad(f, -12.0, 12.0, epsabs=0.0, epsrel=1e-10, limit=200)[0]
        assert got == pytest.approx(expected[i], rel=1e-6, abs=1e-10)


def test_sov_transform_is_continuous():
    spec = GbmSpec(d=4, K=100.0)
    z = np.linspace(-4.0, 4.0, 4001)
    Z = np.column_stack([z, np.full((z.size, 3), 0.3)])
    vals = sov_transform('delta', spec, _std(spec), Z)
    assert np.abs(np.diff(vals)).max() < 1e-2


def test_sov_map_range():
    alpha = np.array([-1.0, 0.0, 2.5])
    t = sov_map(alpha[:, None], np.linspace(-6.0, 6.0, 13)[None, :])
    assert np.all(t >= alpha[:, None] - 1e-12)
    assert np.all(np.diff(t, axis=1) > 0)


def test_pca_direction():
    spec = GbmSpec(d=16)
    u1 = pca_direction(spec)
    col = _std(spec).R @ u1
    pca = bm_construction(spec.d, spec.dt, 'pca').R[:, 0]
    np.testing.assert_allclose(col / np.linalg.norm(col), pca / np.linalg.norm(pca), atol=1e-10)


def test_gamma_rotation_keeps_first_increment():
    spec = GbmSpec(d=8)
    rot, R = greek_rotation(spec, 'gamma', M=32, seed=1)
    np.testing.assert_array_equal(rot.first_column, np.eye(8)[0])
    np.testing.assert_allclose(R.first_column, np.full(8, np.sqrt(spec.dt)))


@pytest.mark.parametrize("kind", ['delta', 'rho', 'theta', 'vega'])
def test_greek_rotation_is_preintegration_feasible(kind):
    spec = GbmSpec(d=8, K=100.0)
    rot, R = greek_rotation(spec, kind, M=32, seed=1)
    rot.check()
    assert np.all(R.first_column >= -1e-12)
    assert R.residual() < 1e-10
    z_rest = np.random.default_rng(3).standard_normal((4, 7))
    assert np.all(np.isfinite(preint_greek(spec, kind, R, z_rest)))
