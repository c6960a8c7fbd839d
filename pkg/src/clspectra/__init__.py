"""Spectral moments of Chung-Lu random graphs with given expected degrees."""

__version__ = "0.1.0"

from clspectra.errors import (
    A1Violation,
    ContractError,
    DenseCapExceeded,
    DivergentMomentError,
)
from clspectra.degree_models import (
    DegreeSequence,
    ExponentialParams,
    PowerLawParams,
    lambda_closed_form,
    lambda_estimates,
    load_custom,
    make_constant,
    make_exponential,
    make_power_law,
    power_sums,
)
from clspectra.graph_sampler import (
    RNG_ID,
    AdjacencySample,
    MatrixKind,
    dense_matrix,
    matvec,
    sample,
)
from clspectra.empirical_spectra import (
    MomentReport,
    SpectrumHistogram,
    eigenvalues,
    histogram,
    largest_eigenvalue_power,
    moment_bounds_on_lambda,
    moments_dense,
    moments_from_eigenvalues,
    moments_hutchinson,
)
from clspectra.moment_engine import (
    TheoreticalMoments,
    TreeDegreeDistribution,
    catalan,
    enumerate_Rs,
    exponential_moments,
    limiting_moments,
    rescale_moments,
)
from clspectra.distribution_analysis import (
    KAPPA_TRIANGLE,
    Lambda1Prediction,
    TriangularFit,
    beta_critical,
    kurtosis_analysis,
    largest_eigenvalue_prediction,
    triangular_density,
    triangular_moments,
)
from clspectra.assumptions import AssumptionDiagnostics, TrendRecord, check_assumptions
