# Random matrix Monte Carlo
from .ensembles import EnsembleSpec, block_sizes, get_ensemble, register_ensemble, sample_matrix, trial_rng
from .estimator import MomentEstimate, ConvergenceRow, convergence_report, estimate_moment

__all__ = [
    'EnsembleSpec', 'block_sizes', 'get_ensemble', 'register_ensemble', 'sample_matrix', 'trial_rng',
    'MomentEstimate', 'ConvergenceRow', 'convergence_report', 'estimate_moment',
]
