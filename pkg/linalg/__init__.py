from .eig import SpectralDecomposition, check_symmetric, sym_eig
from .construction import PathConstruction, cholesky, reversed_cholesky, bm_covariance, bm_construction, \
    householder_matrix, householder_complement
