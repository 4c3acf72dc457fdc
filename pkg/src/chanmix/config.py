"""Numerical tolerances used across the package.

All thresholds live here so classification decisions stay auditable:
tests and CLI output reference these names rather than inline magic
numbers.
"""

from dataclasses import dataclass


@dataclass
class Tolerances:
    # relative Frobenius deviation allowed before eig_hermitian refuses input
    hermiticity_rel: float = 1e-10
    # absolute Frobenius deviation for unitarity checks
    unitarity: float = 1e-8
    # minimum Choi eigenvalue allowed for complete positivity
    choi_psd: float = -1e-9
    # Choi eigenvalues below cutoff * d are dropped when extracting Kraus operators
    kraus_cutoff: float = 1e-12
    # default classification epsilon for analytic / two-qubit channels
    classify_analytic: float = 1e-8
    # default classification epsilon for many-body channels (larger backward error)
    classify_manybody: float = 1e-6
    # Frobenius deviation of U^{R2} U^{R2 dagger} from identity
    dual_unitarity: float = 1e-8
    # density-matrix validity: trace, hermiticity, minimum eigenvalue
    state_trace: float = 1e-10
    state_min_eig: float = -1e-10


TOL = Tolerances()
