from .report import ErfRow, ErfReport, emit_csv, read_csv, HEADER
from .experiment import ExperimentConfig, run_estimator, run_replicates, erf_table, cde_table, \
    replicate_seed, is_power_of_two, BASELINE
