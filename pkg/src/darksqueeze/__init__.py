"""Collective spin squeezing and pairwise entanglement of stored-photon
dark states, with closed forms, decoherence channels, a storage-protocol
layer, and an exact brute-force oracle for verification."""

from darksqueeze._version import __version__
from darksqueeze.channels import (
    ChannelKind,
    ChannelStrength,
    evolve_moments,
    evolved_concurrence,
    evolved_rho12,
    evolved_squeezing,
    kraus_ops,
    sudden_death,
)
from darksqueeze.dataset import Dataset
from darksqueeze.errors import (
    CapacityError,
    ConfigError,
    DarksqueezeError,
    DegenerateDenominatorError,
    FlatTraceError,
    NoCrossingError,
    NonPhysicalStateError,
)
from darksqueeze.figures import figure, figure_tags
from darksqueeze.kernels import BACKEND
from darksqueeze.model import (
    CollectiveMoments,
    ModelParams,
    PhotonWeights,
    collective_moments,
    dark_couplings,
    dirichlet_kernel,
    moment_closed_forms,
    normalization_A,
    photon_weights,
    sub_poisson,
)
from darksqueeze.pairwise import (
    TwoQubitState,
    assemble_x_matrix,
    concurrence_x,
    element_closed_forms,
    rho12,
    wootters_concurrence,
)
from darksqueeze.protocol import (
    DecayRate,
    ProtocolTrace,
    PulseSchedule,
    adiabatic_t1,
    cross_correlation,
    decoherence_strength,
    optimal_times,
    protocol_trace,
    rabi_pulses,
    refined_optimal_times,
    retrieval_efficiency,
    t1_variants,
    theta_of_t,
)
from darksqueeze.squeezing import (
    CorrelationMatrices,
    SqueezingReport,
    TransverseMoments,
    critical_K,
    dark_state_squeezing,
    squeezing_from_moments,
    sym3_eigvals,
    toth_matrices,
)
from darksqueeze.verify import (
    annihilation_residual,
    channel_deviations,
    oracle_suite,
    state_deviations,
)

__all__ = [
    "__version__",
    "BACKEND",
    # model
    "ModelParams",
    "PhotonWeights",
    "CollectiveMoments",
    "photon_weights",
    "normalization_A",
    "collective_moments",
    "moment_closed_forms",
    "sub_poisson",
    "dark_couplings",
    "dirichlet_kernel",
    # squeezing
    "SqueezingReport",
    "TransverseMoments",
    "CorrelationMatrices",
    "squeezing_from_moments",
    "dark_state_squeezing",
    "toth_matrices",
    "critical_K",
    "sym3_eigvals",
    # pairwise
    "TwoQubitState",
    "rho12",
    "element_closed_forms",
    "assemble_x_matrix",
    "concurrence_x",
    "wootters_concurrence",
    # channels
    "ChannelKind",
    "ChannelStrength",
    "kraus_ops",
    "evolve_moments",
    "evolved_squeezing",
    "evolved_rho12",
    "evolved_concurrence",
    "sudden_death",
    # protocol
    "PulseSchedule",
    "DecayRate",
    "ProtocolTrace",
    "rabi_pulses",
    "theta_of_t",
    "adiabatic_t1",
    "t1_variants",
    "decoherence_strength",
    "retrieval_efficiency",
    "cross_correlation",
    "protocol_trace",
    "optimal_times",
    "refined_optimal_times",
    # datasets / verification
    "Dataset",
    "figure",
    "figure_tags",
    "state_deviations",
    "channel_deviations",
    "annihilation_residual",
    "oracle_suite",
    # errors
    "DarksqueezeError",
    "CapacityError",
    "ConfigError",
    "DegenerateDenominatorError",
    "FlatTraceError",
    "NoCrossingError",
    "NonPhysicalStateError",
]
