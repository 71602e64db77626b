from ._specs import GbmSpec, SvSpec, BasketSpec, CleSpec, LognormalSumSpec

SPREAD_RHOS = (-0.5, 0.5)
SPREAD_STRIKES = (-10.0, 0.0, 10.0)
SV_RHOS = (-0.5, 0.5)
SV_STRIKES = (90.0, 100.0, 110.0)
GREEK_STRIKES = (90.0, 100.0, 110.0)
CLE_STRIKES = (90.0, 100.0, 110.0)
CDE_RHOS = (-0.5, 0.5)


def spread(rho=-0.5, K=0.0, **kwargs):
    """ Two-asset spread, sigma_1 = sigma_2 = 0.2, r = 0.05, d = 32. """
    return BasketSpec.spread(rho, K, **kwargs)


def hull_white(rho=-0.5, K=100.0, **kwargs):
    params = dict(r=0.05, V0=0.2, xi=0.5, nu=0.0, S0=100.0, T=1.0, d=32)
    params.update(kwargs)
    return SvSpec(kind='hullwhite', rho=rho, K=K, **params)


def heston(rho=-0.5, K=100.0, **kwargs):
    params = dict(r=0.05, sigma_v=0.05, V0=0.2, theta=0.2, kappa=1.0, S0=100.0, T=1.0, d=32)
    params.update(kwargs)
    return SvSpec(kind='heston', rho=rho, K=K, **params)


def stein_stein(rho=-0.5, K=100.0, **kwargs):
    params = dict(r=0.05, V0=0.2, theta=0.2, sigma_v=0.1, kappa=1.0, S0=100.0, T=1.0, d=32)
    params.update(kwargs)
    return SvSpec(kind='steinstein', rho=rho, K=K, **params)


def black_scholes_asian(K=100.0, **kwargs):
    params = dict(S0=100.0, r=0.05, sigma=0.2, T=1.0, d=32)
    params.update(kwargs)
    return GbmSpec(K=K, **params)


def isomerization(K=100.0, **kwargs):
    """Reversible isomerization, X0 = [1e2, 1e6], c = (1, 1e-4), T = 1.6, tau = 0.2.

    Reaction 1 turns S1 into S2 with propensity c1 X1, reaction 2 turns S2
    back into S1 with propensity c2 X2, so X1 reverts to c2 X2 / c1.
    """
    params = dict(nu=[[-1, 1], [1, -1]], rates=(1.0, 1e-4), X0=(100.0, 1e6), tau=0.2, d=8)
    params.update(kwargs)
    return CleSpec(K=K, **params)


def lognormal_autocorr(rho=0.5, d=10, mu=0.0):
    return LognormalSumSpec.autocorrelation(d, rho, mu)


SV_MODELS = {
    'hullwhite': hull_white,
    'heston': heston,
    'steinstein': stein_stein,
}


def sv_model(name, rho=-0.5, K=100.0, **kwargs):
    return SV_MODELS[name](rho=rho, K=K, **kwargs)
