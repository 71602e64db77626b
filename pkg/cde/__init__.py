from .density import DensityEstimate, default_grid, cde_curve, mise, neg_log2, cde_construction, \
    cde_replicates, write_curves, CDE_METHODS, MISE_CAP
