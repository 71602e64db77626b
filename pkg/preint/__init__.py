from .roots import Root, AllAbove, AllBelow, find_roots_monotone, find_root_monotone
from .expsum import ExpSum, moment0, moment1
from .conditional import PreintContext, gbm_context, sv_context, basket_context, preint_asian_gbm, \
    preint_asian_sv, preint_basket, preint_cle_cdf, lognormal_expsum, lognormal_conditional
