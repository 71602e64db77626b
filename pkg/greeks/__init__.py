from .pathwise import GreekKind, KINDS, greek_factor, greek_pathwise
from .sov import sov_transform, sov_map
from .preint import preint_greek
from .rotation import greek_moment, greek_rotation, pca_direction
