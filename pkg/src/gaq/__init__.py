"""gaq: budget-limited node querying and signal recovery on graphs.

The package selects which nodes of a graph to label under a budget by
combining two criteria: spectral informativeness (which labels enlarge the
identifiable signal space) and barrier-potential representativeness (which
labels keep the queried design well-conditioned). Responses are then
recovered over the whole graph by weighted least squares on spectrally
smoothed covariates, for regression or one-vs-rest classification.
"""

from .covariates import (
    CovariateMatrix,
    SmoothedCovariates,
    identity_covariates,
    project_signal,
    smoothed_basis,
    standardize,
)
from .graph import (
    Graph,
    LOWHIGH,
    LOWPASS,
    SpectralBasis,
    bandwidth_estimate,
    build_graph,
    normalized_laplacian,
    spectral_basis,
)
from .informative import (
    BandwidthReport,
    InfoContext,
    argmax_score,
    bandwidth_oracle,
    build_context,
    info_gain_scores,
)
from .recovery import (
    LabeledSample,
    MetricsReport,
    RecoveryModel,
    classify,
    fit_wls,
    homophily_ratio,
    metrics,
    predict,
    softmax,
)
from .representative import (
    CandidateDraw,
    QueryState,
    apply_selection,
    draw_candidates,
    init_state,
    potential,
    sampling_probs,
)
from .selector import (
    MTuneResult,
    QueryResult,
    SelectorConfig,
    design_condition_number,
    doptimal_select,
    random_select,
    select_nodes,
    tune_m,
)
from .synthetic import (
    BarabasiAlbert,
    StochasticBlock,
    SyntheticInstance,
    SyntheticSpec,
    WattsStrogatz,
    benchmark_spec,
    generate_graph,
    generate_instance,
)

__version__ = "0.1.0"

__all__ = [
    "BandwidthReport",
    "BarabasiAlbert",
    "CandidateDraw",
    "CovariateMatrix",
    "Graph",
    "InfoContext",
    "LOWHIGH",
    "LOWPASS",
    "LabeledSample",
    "MTuneResult",
    "MetricsReport",
    "QueryResult",
    "QueryState",
    "RecoveryModel",
    "SelectorConfig",
    "SmoothedCovariates",
    "SpectralBasis",
    "StochasticBlock",
    "SyntheticInstance",
    "SyntheticSpec",
    "WattsStrogatz",
    "apply_selection",
    "argmax_score",
    "bandwidth_estimate",
    "bandwidth_oracle",
    "benchmark_spec",
    "build_context",
    "build_graph",
    "classify",
    "design_condition_number",
    "doptimal_select",
    "draw_candidates",
    "fit_wls",
    "generate_graph",
    "generate_instance",
    "homophily_ratio",
    "identity_covariates",
    "info_gain_scores",
    "init_state",
    "metrics",
    "normalized_laplacian",
    "potential",
    "predict",
    "project_signal",
    "random_select",
    "sampling_probs",
    "select_nodes",
    "smoothed_basis",
    "softmax",
    "spectral_basis",
    "standardize",
    "tune_m",
]
