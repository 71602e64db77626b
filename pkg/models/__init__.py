from ._specs import GbmSpec, SvSpec, BasketSpec, CleSpec, LognormalSumSpec, SV_KINDS, as_matrix
from ._asian import asset_paths, average_price, asian_call
from ._sv import split_drivers, sv_variance_paths, sv_log_paths, sv_average, sv_asian
from ._basket import basket_covariance, correlation_factor, basket_factor, basket_sign_pattern, \
    basket_log_paths, basket_average, basket_payoff
from ._cle import propensities, cle_step, cle_trajectory, cle_indicator, cle_smoothed
from ._lognormal import lognormal_sum
from .modeling import *
