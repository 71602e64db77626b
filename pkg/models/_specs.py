import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from utils.errors import InvalidInputError

logger = logging.getLogger(__name__)

SV_KINDS = ('hullwhite', 'heston', 'steinstein')


def as_matrix(obj, size=None):
    """ The matrix behind a PathConstruction (R), a Rotation (U), an array, or identity for None. """
    if obj is None:
        return np.eye(size)
    if hasattr(obj, 'R'):
        return obj.R
    if hasattr(obj, 'U'):
        return obj.U
    return np.asarray(obj, dtype=np.float64)


def _check(cond, msg, *args):
    if not cond:
        raise InvalidInputError(msg % args)


@dataclass(frozen=True)
class GbmSpec:
    """ Black-Scholes asset sampled at d equally spaced dates up to T. """
    S0: float = 100.0
    r: float = 0.05
    sigma: float = 0.2
    T: float = 1.0
    d: int = 32
    K: float = 100.0

    def __post_init__(self):
        _check(self.S0 > 0, "S0 must be positive, got %s", self.S0)
        _check(self.sigma >= 0, "sigma must be nonnegative, got %s", self.sigma)
        _check(self.T > 0, "T must be positive, got %s", self.T)
        _check(self.d >= 1, "d must be at least 1, got %s", self.d)

    @property
    def dt(self):
        return self.T / self.d

    @property
    def times(self):
        return self.dt * np.arange(1, self.d + 1)

    @property
    def discount(self):
        return np.exp(-self.r * self.T)


@dataclass(frozen=True)
class SvSpec:
    kind: str = 'heston'
    r: float = 0.05
    S0: float = 100.0
    K: float = 100.0
    V0: float = 0.2
    rho: float = -0.5
    T: float = 1.0
    d: int = 32
    # hullwhite
    nu: float = 0.0
    xi: float = 0.0
    # heston / steinstein
    kappa: float = 0.0
    theta: float = 0.0
    sigma_v: float = 0.0

    def __post_init__(self):
        _check(self.kind in SV_KINDS, "unknown volatility model '%s'", self.kind)
        _check(abs(self.rho) < 1, "|rho| must be below 1, got %s", self.rho)
        _check(self.V0 > 0, "V0 must be positive, got %s", self.V0)
        _check(self.T > 0 and self.d >= 1, "need T > 0 and d >= 1")
        if self.kind == 'heston' and not self.feller:
            logger.warning("Heston parameters violate the Feller condition 2*kappa*theta >= sigma_v^2")

    @property
    def dt(self):
        return self.T / self.d

    @property
    def discount(self):
        return np.exp(-self.r * self.T)

    @property
    def feller(self):
        return 2.0 * self.kappa * self.theta >= self.sigma_v ** 2


@dataclass(frozen=True, eq=False)
class BasketSpec:
    """ L assets with signed weights; ``corr`` is the L x L correlation of their Brownian drivers. """
    weights: Tuple[float, ...] = (1.0, -1.0)
    S0: Tuple[float, ...] = (100.0, 100.0)
    sigmas: Tuple[float, ...] = (0.2, 0.2)
    corr: np.ndarray = field(default_factory=lambda: np.eye(2))
    r: float = 0.05
    T: float = 1.0
    d: int = 32
    K: float = 0.0

    def __post_init__(self):
        L = len(self.weights)
        _check(len(self.S0) == L and len(self.sigmas) == L, "weights, S0 and sigmas need equal length")
        corr = np.asarray(self.corr, dtype=np.float64)
        _check(corr.shape == (L, L), "correlation matrix must be %dx%d", L, L)
        _check(np.allclose(np.diag(corr), 1.0) and np.allclose(corr, corr.T),
               "correlation matrix needs unit diagonal and symmetry")
        _check(np.linalg.eigvalsh(corr).min() >= -1e-12, "correlation matrix is not PSD")
        _check(self.T > 0 and self.d >= 1, "need T > 0 and d >= 1")

    @property
    def L(self):
        return len(self.weights)

    @property
    def dt(self):
        return self.T / self.d

    @property
    def discount(self):
        return np.exp(-self.r * self.T)

    @classmethod
    def spread(cls, rho, K, sigma1=0.2, sigma2=0.2, S0=100.0, r=0.05, T=1.0, d=32):
        return cls(weights=(1.0, -1.0), S0=(S0, S0), sigmas=(sigma1, sigma2),
                   corr=np.array([[1.0, rho], [rho, 1.0]]), r=r, T=T, d=d, K=K)


@dataclass(frozen=True, eq=False)
class CleSpec:
    """Chemical Langevin system. ``nu`` is N x J, reaction j fires with
    propensity rates[j] * X[reactants[j]]."""
    nu: np.ndarray = field(default_factory=lambda: np.array([[-1, 1], [1, -1]]))
    rates: Tuple[float, ...] = (1.0, 1e-4)
    X0: Tuple[float, ...] = (100.0, 1e6)
    tau: float = 0.2
    d: int = 8
    K: float = 100.0
    reactants: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        nu = np.asarray(self.nu)
        _check(nu.ndim == 2, "stoichiometry must be an N x J matrix")
        _check(len(self.rates) == nu.shape[1], "need one rate per reaction")
        _check(len(self.X0) == nu.shape[0], "need one initial count per species")
        _check(self.tau > 0 and self.d >= 1, "need tau > 0 and d >= 1")
        for j in self.reactant_index:
            _check(0 <= j < nu.shape[0], "reactant index %d out of range", j)

    @property
    def N(self):
        return np.asarray(self.nu).shape[0]

    @property
    def J(self):
        return np.asarray(self.nu).shape[1]

    @property
    def T(self):
        return self.tau * self.d

    @property
    def s(self):
        return self.d * self.J

    @property
    def reactant_index(self):
        return tuple(range(self.J)) if self.reactants is None else tuple(self.reactants)


@dataclass(frozen=True, eq=False)
class LognormalSumSpec:
    mu: np.ndarray
    Sigma: np.ndarray

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=np.float64)
        Sigma = np.asarray(self.Sigma, dtype=np.float64)
        _check(Sigma.shape == (mu.size, mu.size), "Sigma must be %dx%d", mu.size, mu.size)
        _check(np.linalg.eigvalsh(0.5 * (Sigma + Sigma.T)).min() >= -1e-12, "Sigma is not PSD")

    @property
    def d(self):
        return np.asarray(self.mu).size

    @classmethod
    def autocorrelation(cls, d, rho, mu=0.0):
        idx = np.arange(d)
        Sigma = float(rho) ** np.abs(np.subtract.outer(idx, idx))
        return cls(mu=np.full(d, mu, dtype=np.float64), Sigma=Sigma)
