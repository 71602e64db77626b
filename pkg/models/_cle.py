import numpy as np

SMOOTH_WIDTH = 5.0


def propensities(spec, X):
    """ Mass-action propensities rates[j] * X[reactants[j]], clamped at 0. """
    a = np.asarray(spec.rates, dtype=np.float64) * X[:, list(spec.reactant_index)]
    return np.maximum(a, 0.0)


def cle_step(spec, X, z):
    nu = np.asarray(spec.nu, dtype=np.float64)
    a = propensities(spec, X)
    return X + spec.tau * a @ nu.T + (np.sqrt(a * spec.tau) * z) @ nu.T


def cle_trajectory(spec, Z, steps=None):
    """Euler-Maruyama path of the chemical Langevin equation.

    ``Z`` is (n, d*J) with the Gaussian of reaction j at step k in column
    k*J + j. Returns the state after ``steps`` steps (default d) and the
    history X_0..X_steps of shape (n, steps+1, N).
    """
    Z = np.atleast_2d(Z)
    steps = spec.d if steps is None else steps
    n, J = Z.shape[0], spec.J
    X = np.tile(np.asarray(spec.X0, dtype=np.float64), (n, 1))
    history = np.empty((n, steps + 1, spec.N))
    history[:, 0] = X
    for k in range(steps):
        X = cle_step(spec, X, Z[:, k * J:(k + 1) * J])
        history[:, k + 1] = X
    return X, history


def cle_indicator(spec, Z, species=0):
    X, _ = cle_trajectory(spec, Z)
    return (X[:, species] <= spec.K).astype(np.float64)


def cle_smoothed(spec, Z, species=0):
    """ 0.5 (1 + tanh((X_d - K) / 5)); used only to find important directions. """
    X, _ = cle_trajectory(spec, Z)
    return 0.5 * (1.0 + np.tanh((X[:, species] - spec.K) / SMOOTH_WIDTH))
