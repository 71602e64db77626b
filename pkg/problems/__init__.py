from .base import Problem, Estimator, METHODS, FINANCE_METHODS, CLE_METHODS
from .spread import BasketProblem
from .sv import SvProblem, pca_block_rotation
from .greek import GreekProblem
from .cle import CleProblem
from .cde import CdeProblem
