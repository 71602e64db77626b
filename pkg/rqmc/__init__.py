from .sobol import DirectionNumbers, LowDiscrepancySet, load_direction_numbers, sobol_points, MAX_DIM
from .scramble import scramble, uniform_stream
from .gaussian import GaussianMatrix, to_gaussian, rqmc_normals, mc_normals, norm_cdf, norm_sf, norm_pdf
