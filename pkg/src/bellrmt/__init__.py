"""Monte Carlo random-matrix estimates of Bell-inequality violations from random pure states."""

from .analytic import (
    AnalyticTable,
    SpectralDensity,
    analytic_table,
    asymptotic_mean,
    c_k,
    c_k_quadrature,
    catalan_constant,
    exact_mean_a2,
    lue_relation_check,
    mp_cdf,
    mp_density,
    structured_density,
    structured_support,
)
from .bell import BellKernel, build_kernel, maxent_target, target_value
from .engine import (
    DEFAULT_GRID,
    MomentSummary,
    SweepConfig,
    SweepPoint,
    SweepResult,
    emit_results,
    estimate_moments,
    read_results_csv,
    read_results_json,
    run_sweep,
)
from .ensembles import (
    EnsembleSpec,
    McmcConfig,
    MetropolisResult,
    SchmidtSpectrum,
    draw_spectrum,
    metropolis_fixed_trace,
    sample_ginibre,
    schmidt_hs,
    schmidt_maxent,
    schmidt_structured,
    shuffle_spectrum,
)
from .linalg import hermitian_eigenvalues, unitary_from_qr
from .rng import RandomStream, stream_index, substream

__version__ = "0.1.0"
