"""Spectra of quaternion sample covariance matrices and the Marchenko-Pastur law."""
from .distances import kolmogorov_distance, levy_distance, levy_fourth_power_bound, rank_bound
from .errors import (
    ContractError,
    DimensionError,
    DomainError,
    InvertibilityError,
    PreconditionError,
    QuatmpError,
    ValidationError,
)
from .experiment import ConvergenceReport, ExperimentConfig, run_experiment, run_sweep
from .kernels import BACKEND
from .mplaw import MPLaw, mp_cdf, mp_density, mp_stieltjes, mp_support
from .quaternion import E, I, J, K, Quaternion, QuaternionMatrix, conjugate, multiply, norm
from .sampling import (
    EntryDistribution,
    PipelineOutput,
    gaussian,
    lindeberg_estimate,
    preprocess_entries,
    sample_matrix,
    shifted,
    signed_units,
    student_t,
)
from .spectra import (
    SpectralSample,
    empirical_stieltjes,
    esd_eval,
    hermitian_eigenvalues,
    sample_covariance,
    spectrum,
)
from .structure import (
    Kind,
    StructureReport,
    embed_matrix,
    embed_scalar,
    inverse_structure_check,
    structure_residual,
)

__version__ = "0.1.0"
