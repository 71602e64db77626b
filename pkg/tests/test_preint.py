import numpy as np
import pytest
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.stats import norm, lognorm

from linalg import bm_construction, householder_complement
from models import GbmSpec, LognormalSumSpec, average_price, sv_average, basket_average, basket_factor, \
    cle_trajectory, modeling
from preint import ExpSum, moment0, moment1, find_root_monotone, find_roots_monotone, Root, AllAbove, AllBelow, \
    gbm_context, sv_context, basket_context, preint_asian_gbm, preint_asian_sv, preint_basket, preint_cle_cdf, \
    lognormal_conditional
from subspace import identity_rotation, cas_rotation
from utils.errors import ContractViolationError, SignConditionError, DegenerateDirectionError


def call_oracle(h, K, lo=-12.0, hi=12.0):
    """ E[(h(z) - K)_+] for a nondecreasing scalar h by adaptive quadrature """
    g = lambda z: h(z) - K
    if g(hi) <= 0:
        return 0.0
    start = lo if g(lo) >= 0 else brentq(g, lo, hi, xtol=1e-14)
    val, _ = quad(lambda z: g(z) * norm.pdf(z), start, hi, epsabs=0.0, epsrel=1e-11, limit=200)
    return val


def test_scalar_root():
    res = find_root_monotone(lambda x: (x ** 3 - 2.0, 3 * x ** 2))
    assert isinstance(res, Root)
    assert res.gamma == pytest.approx(2.0 ** (1 / 3), abs=1e-12)


def test_scalar_root_by_bisection():
    res = find_root_monotone(lambda x: np.tanh(x - 0.3))
    assert res.gamma == pytest.approx(0.3, abs=1e-11)


def test_no_sign_change():
    assert isinstance(find_root_monotone(lambda x: (np.exp(x) + 1.0, np.exp(x))), AllAbove)
    assert isinstance(find_root_monotone(lambda x: (-1.0 - np.exp(-x), np.exp(-x))), AllBelow)
    assert AllAbove().gamma == -np.inf and AllBelow().gamma == np.inf


def test_wide_bracket_stage():
    res = find_root_monotone(lambda x: (x - 30.0, 1.0))
    assert res.gamma == pytest.approx(30.0, abs=1e-12)


def test_contract_violations():
    with pytest.raises(ContractViolationError):
        find_root_monotone(lambda x: (-x, -1.0))
    with pytest.raises(ContractViolationError):
        find_root_monotone(lambda x: (np.nan, np.nan))


def test_vectorised_roots_with_guess():
    shift = np.linspace(-5.0, 5.0, 11)
    func = lambda x: (np.sinh(x - shift), np.cosh(x - shift))
    np.testing.assert_allclose(find_roots_monotone(func, 11), shift, atol=1e-12)
    np.testing.assert_allclose(find_roots_monotone(func, 11, guess=shift + 0.1), shift, atol=1e-12)


@pytest.mark.parametrize("c,gamma", [(0.0, 0.0), (0.7, -1.2), (-1.5, 0.4), (2.0, 3.0)])
def test_moments(c, gamma):
    m0, _ = quad(lambda z: np.exp(c * z) * norm.pdf(z), gamma, np.inf, epsrel=1e-12)
    m1, _ = quad(lambda z: z * np.exp(c * z) * norm.pdf(z), gamma, np.inf, epsrel=1e-12)
    assert moment0(c, gamma) == pytest.approx(m0, rel=1e-9)
    assert moment1(c, gamma) == pytest.approx(m1, rel=1e-9, abs=1e-14)


def test_expsum_conditional_call_matches_quadrature():
    rng = np.random.default_rng(0)
    for _ in range(100):
        k = rng.integers(1, 6)
        sign = np.where(rng.random(k) < 0.7, 1.0, -1.0)
        a = sign * rng.uniform(0.1, 2.0, k)
        b = sign * rng.uniform(0.0, 0.8, k)
        K = rng.uniform(-1.0, 3.0)
        es = ExpSum(a, b, K)
        expected = call_oracle(lambda z: float(np.sum(a * np.exp(b * z))), K)
        assert es.conditional_call()[0] == pytest.approx(expected, rel=1e-6, abs=1e-10)


def test_expsum_root_and_limits():
    es = ExpSum([[1.0, 2.0], [1.0, 1.0], [1.0, 1.0]], [[0.5, 0.5], [0.3, 0.3], [0.3, 0.3]], [3.0, -1.0, 0.0])
    gamma = es.root()
    assert gamma[0] == pytest.approx(0.0, abs=1e-12)
    assert gamma[1] == -np.inf
    assert gamma[2] == -np.inf or es.value(gamma[2:])[0] == pytest.approx(0.0, abs=1e-12)
    assert es.conditional_call(gamma)[1] == pytest.approx(2.0 * np.exp(0.045) + 1.0)


def test_expsum_sign_condition():
    with pytest.raises(SignConditionError):
        ExpSum([1.0, 1.0], [0.5, -0.5], 1.0)
    # rounding-level violations are tolerated
    ExpSum([1.0, 1.0], [0.5, -1e-16], 1.0)


@pytest.mark.parametrize("kind", ['standard', 'pca'])
def test_gbm_preintegration_matches_quadrature(kind):
    spec = GbmSpec(d=6, K=100.0)
    R = bm_construction(spec.d, spec.dt, kind)
    ctx = gbm_context(spec, R)
    z_rest = np.random.default_rng(1).standard_normal((100, spec.d - 1))
    got = preint_asian_gbm(ctx, z_rest)
    for i in range(0, 100, 5):
        h = lambda z: average_price(spec, R, np.concatenate([[z], z_rest[i]])[None, :])[0]
        assert got[i] == pytest.approx(call_oracle(h, spec.K), rel=1e-6, abs=1e-9)


def test_gbm_context_needs_nonnegative_column():
    spec = GbmSpec(d=4)
    R = bm_construction(4, spec.dt, 'standard').R
    with pytest.raises(SignConditionError):
        gbm_context(spec, -R)


@pytest.mark.parametrize("model", ['hullwhite', 'heston', 'steinstein'])
def test_sv_preintegration_matches_quadrature(model):
    spec = modeling.sv_model(model, rho=-0.5, K=100.0, d=4)
    rot = identity_rotation(8)
    ctx = sv_context(spec, rot)
    z_rest = np.random.default_rng(2).standard_normal((20, 7))
    got = preint_asian_sv(ctx, z_rest)
    for i in range(20):
        h = lambda z: sv_average(spec, rot, np.concatenate([[z], z_rest[i]])[None, :])[0]
        assert got[i] == pytest.approx(call_oracle(h, spec.K), rel=1e-6, abs=1e-9)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_rotated_heston_preintegration_matches_quadrature(seed):
    spec = modeling.heston(rho=-0.5, K=90.0, d=4)
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((8, 8))
    u1 = np.zeros(8)
    u1[:4] = np.abs(rng.standard_normal(4)) + 0.1
    rot = cas_rotation(A @ A.T, u1 / np.linalg.norm(u1))
    assert np.abs(rot.U[4:, 1:]).max() > 0.1
    ctx = sv_context(spec, rot)
    z_rest = rng.standard_normal((10, 7))
    got = preint_asian_sv(ctx, z_rest)
    for i in range(10):
        h = lambda z: sv_average(spec, rot, np.concatenate([[z], z_rest[i]])[None, :])[0]
        assert got[i] == pytest.approx(call_oracle(h, spec.K), rel=1e-6, abs=1e-9)


def test_sv_context_needs_asset_block_direction():
    spec = modeling.heston(d=4)
    U = np.eye(8)[:, ::-1]
    with pytest.raises(SignConditionError):
        sv_context(spec, U)


@pytest.mark.parametrize("rho", [-0.5, 0.5])
@pytest.mark.parametrize("K", [-10.0, 0.0, 10.0])
def test_basket_preintegration_matches_quadrature(rho, K):
    spec = modeling.spread(rho=rho, K=K, d=4)
    R = basket_factor(spec, 'standard')
    ctx = basket_context(spec, R)
    z_rest = np.random.default_rng(3).standard_normal((10, 7))
    got = preint_basket(ctx, z_rest)
    for i in range(10):
        h = lambda z: basket_average(spec, R, np.concatenate([[z], z_rest[i]])[None, :])[0]
        assert got[i] == pytest.approx(call_oracle(h, spec.K), rel=1e-6, abs=1e-9)


def test_integrand_takes_remaining_inputs():
    spec = GbmSpec(d=4)
    ctx = gbm_context(spec, bm_construction(4, spec.dt, 'standard'))
    z_rest = np.random.default_rng(4).standard_normal((8, 3))
    np.testing.assert_array_equal(ctx.integrand(z_rest), preint_asian_gbm(ctx, z_rest))


def test_cle_cdf_matches_conditional_sampling():
    spec = modeling.isomerization(K=100.0)
    s, J = spec.s, spec.J
    u1 = np.zeros(s)
    u1[s - J] = 1.0
    B = householder_complement(u1)
    rng = np.random.default_rng(5)
    z_rest = rng.standard_normal((5, s - 1))
    got = preint_cle_cdf(spec, u1, spec.K, z_rest)
    y = rng.standard_normal(20000)
    for i in range(5):
        Z = np.outer(y, u1) + z_rest[i] @ B.T
        X, _ = cle_trajectory(spec, Z)
        hits = (X[:, 0] <= spec.K).astype(float)
        se = max(hits.std(ddof=1) / np.sqrt(y.size), 1e-3)
        assert abs(got[i] - hits.mean()) <= 4 * se


def test_cle_cdf_is_exact_in_the_last_step():
    spec = modeling.isomerization(K=100.0)
    s, J = spec.s, spec.J
    u1 = np.zeros(s)
    u1[s - J:] = [0.6, 0.8]
    B = householder_complement(u1)
    z_rest = np.random.default_rng(6).standard_normal((3, s - 1))
    Z0 = z_rest @ B.T
    X0, _ = cle_trajectory(spec, Z0)
    X1, _ = cle_trajectory(spec, Z0 + u1)
    m, c = X0[:, 0], X1[:, 0] - X0[:, 0]
    expected = np.where(c > 0, norm.cdf((spec.K - m) / c), norm.sf((spec.K - m) / c))
    np.testing.assert_allclose(preint_cle_cdf(spec, u1, spec.K, z_rest), expected, rtol=1e-6, atol=1e-12)


@pytest.mark.parametrize("K,expected", [(150.0, 1.0), (100.0, 1.0), (50.0, 0.0)])
def test_cle_cdf_without_reactions_is_an_indicator(K, expected):
    spec = modeling.isomerization(K=K, rates=(0.0, 0.0))
    u1 = np.zeros(spec.s)
    u1[spec.s - spec.J:] = [0.6, 0.8]
    z_rest = np.random.default_rng(8).standard_normal((4, spec.s - 1))
    np.testing.assert_array_equal(preint_cle_cdf(spec, u1, K, z_rest), np.full(4, expected))


def test_cle_cdf_needs_last_step_direction():
    spec = modeling.isomerization()
    u1 = np.zeros(spec.s)
    u1[0] = 1.0
    with pytest.raises(DegenerateDirectionError):
        preint_cle_cdf(spec, u1, spec.K, np.zeros((1, spec.s - 1)))


def test_lognormal_density_in_one_dimension():
    spec = LognormalSumSpec(mu=np.array([0.3]), Sigma=np.array([[0.49]]))
    x = np.linspace(0.1, 10.0, 25)
    for xi in x:
        cdf, dens = lognormal_conditional(spec, np.array([[0.7]]), xi, np.zeros((1, 0)))
        assert dens[0] == pytest.approx(lognorm.pdf(xi, s=0.7, scale=np.exp(0.3)), rel=1e-9)
        assert cdf[0] == pytest.approx(lognorm.cdf(xi, s=0.7, scale=np.exp(0.3)), rel=1e-9)


def test_lognormal_density_is_derivative_of_cdf():
    spec = modeling.lognormal_autocorr(rho=0.5, d=3)
    R = np.linalg.cholesky(spec.Sigma)
    y_rest = np.random.default_rng(7).standard_normal((10, 2))
    h = 1e-5
    for x in (1.0, 3.0, 8.0):
        _, dens = lognormal_conditional(spec, R, x, y_rest)
        up, _ = lognormal_conditional(spec, R, x + h, y_rest)
        dn, _ = lognormal_conditional(spec, R, x - h, y_rest)
        np.testing.assert_allclose(dens, (up - dn) / (2 * h), rtol=1e-5, atol=1e-9)


def test_lognormal_below_infimum():
    spec = modeling.lognormal_autocorr(rho=0.5, d=3)
    R = np.linalg.cholesky(spec.Sigma)
    # x = 0 lies below every sum of exponentials
    cdf, dens = lognormal_conditional(spec, R, 0.0, np.zeros((2, 2)))
    np.testing.assert_array_equal(cdf, [0.0, 0.0])
    np.testing.assert_array_equal(dens, [0.0, 0.0])
