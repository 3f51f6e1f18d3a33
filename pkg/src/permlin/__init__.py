"""Permutation recovery from Gaussian-noise-corrupted observations.

Library surface: symmetric-matrix numerics (`linalg`), linear-regime
construction and detection (`regime`), the linear and Monte Carlo MAP
decoders (`decoder`), and error-probability / figure-data estimators
(`estimators`).  The `permlin` console script exposes all of it.
"""

__version__ = "0.1.0"

from .decoder import (
    Permutation,
    PosteriorTable,
    contains,
    linear_decode,
    map_decode,
    posterior_mean,
    posterior_table,
    sort_permutation,
)
from .errors import (
    DomainError,
    FactorialGuardError,
    NotLinearRegimeError,
    NumericalError,
    ParameterError,
    PermlinError,
)
from .estimators import (
    EllipsoidData,
    Estimate,
    RegionSample,
    ellipsoid_projection_data,
    origin_uniformity,
    perr_geometric,
    perr_simulation,
    region_sample,
    sample_gaussian,
    sample_uniform_ball,
)
from .linalg import (
    CovarianceMatrix,
    OrthonormalBasis,
    Spectrum,
    SymMatrix,
    helmert_q,
    is_positive_definite,
    random_q,
    sym_eigen,
    sym_inverse,
    sym_sqrt,
)
from .regime import (
    LinearRegimeParams,
    RegimeCheckResult,
    block_form_check,
    check_linear_regime,
    conditional_covariance,
    construct_covariance,
    n2_params,
    projection_matrix,
    spectrum_closed_form,
)

__all__ = [name for name in dir() if not name.startswith("_")]
