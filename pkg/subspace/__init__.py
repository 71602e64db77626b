from .gradient import GradientMoment, fd_gradient, estimate_C, DEFAULT_M, DEFAULT_EPS
from .rotation import Unconstrained, FixedVector, BlockSupport, SignPattern, Rotation, \
    as_rotation, cas_rotation, constrained_first_direction, constrained_rotation, fixed_rotation, identity_rotation
