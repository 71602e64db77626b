import numpy as np

from ._specs import as_matrix


def asset_paths(spec, R, Z):
    """ S_j = S0 exp((r - sigma^2/2) t_j + sigma (R z)_j), shape (n, d). """
    Z = np.atleast_2d(Z)
    B = Z @ as_matrix(R, spec.d).T
    drift = (spec.r - 0.5 * spec.sigma ** 2) * spec.times
    return spec.S0 * np.exp(drift + spec.sigma * B)


def average_price(spec, R, Z):
    return asset_paths(spec, R, Z).mean(axis=1)


def asian_call(spec, R, Z):
    """ Undiscounted arithmetic Asian call payoff (S_bar - K)_+. """
    return np.maximum(average_price(spec, R, Z) - spec.K, 0.0)
