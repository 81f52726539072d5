"""Signal extraction by singular spectrum analysis.

The circulant variant diagonalizes a circulant approximation of the
series' second-moment structure, which ties every elementary component
to a known frequency before any data-dependent identification step.
Basic and Toeplitz variants are included for comparison, along with
separability diagnostics, synthetic data generators, Monte Carlo
quality tables, CSV I/O, and a command-line interface.
"""

from .decomposition import (
    Decomposition,
    ElementarySeries,
    basic_ssa,
    cissa,
    cissa_elementary_series,
    toeplitz_ssa,
)
from .diagnostics import (
    AR1Fit,
    RegressionCheck,
    SeasonalityReport,
    WCorrelationMatrix,
    ar1_fit,
    regression_check,
    residual_seasonality_check,
    w_correlation,
    w_correlation_matrix,
    w_weights,
)
from .embedding import antidiagonal_counts, diagonal_average, embed
from .estimators import BasicSSA, CirculantSSA, ToeplitzSSA
from .exceptions import CissaError, InvalidParams, WindowOutOfRange
from .grouping import (
    Band,
    FrequencyGroup,
    GroupingSpec,
    assign_bins,
    default_monthly_grouping,
    format_bands,
    frequency_bins,
    parse_bands,
)
from .io import read_config, read_series, write_decomposition, write_quantile_tables
from .moments import (
    SecondMomentMatrix,
    autocovariances,
    basic_matrix,
    circulant_coefficients,
    circulant_matrix,
    toeplitz_matrix,
)
from .simulate import (
    LinearModelParams,
    MonteCarloResult,
    NonlinearModelParams,
    Realization,
    model_grouping,
    monte_carlo,
    replication_seeds,
    simulate_linear,
    simulate_nonlinear,
)
from .spectral import (
    Eigentriple,
    Periodogram,
    circulant_eigentriples,
    circulant_eigenvalues,
    dominant_frequency,
    fourier_eigenvectors,
    periodogram,
    symmetric_eigentriples,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AR1Fit",
    "Band",
    "BasicSSA",
    "CirculantSSA",
    "CissaError",
    "Decomposition",
    "Eigentriple",
    "ElementarySeries",
    "FrequencyGroup",
    "GroupingSpec",
    "InvalidParams",
    "LinearModelParams",
    "MonteCarloResult",
    "NonlinearModelParams",
    "Periodogram",
    "Realization",
    "RegressionCheck",
    "SeasonalityReport",
    "SecondMomentMatrix",
    "ToeplitzSSA",
    "WCorrelationMatrix",
    "WindowOutOfRange",
    "antidiagonal_counts",
    "ar1_fit",
    "assign_bins",
    "autocovariances",
    "basic_matrix",
    "basic_ssa",
    "circulant_coefficients",
    "circulant_eigentriples",
    "circulant_eigenvalues",
    "circulant_matrix",
    "cissa",
    "cissa_elementary_series",
    "default_monthly_grouping",
    "diagonal_average",
    "dominant_frequency",
    "embed",
    "format_bands",
    "fourier_eigenvectors",
    "frequency_bins",
    "model_grouping",
    "monte_carlo",
    "parse_bands",
    "periodogram",
    "read_config",
    "read_series",
    "regression_check",
    "replication_seeds",
    "residual_seasonality_check",
    "simulate_linear",
    "simulate_nonlinear",
    "symmetric_eigentriples",
    "toeplitz_matrix",
    "toeplitz_ssa",
    "w_correlation",
    "w_correlation_matrix",
    "w_weights",
    "write_decomposition",
    "write_quantile_tables",
]
