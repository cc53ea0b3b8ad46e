"""Multipartite-uniformity toolkit for cluster and graph stabilizer states.

Builds stabilizer groups on lattices, decides m-uniformity by exact or
locality-windowed minimum-weight search, constructs syndrome lookup
tables, simulates an idle-noise error-detection benchmark, and checks
uniformity of an encoded logical space.

Hot search loops dispatch to a compiled extension when it is available
(``muniform.kernels.BACKEND`` reads "compiled" or "pure").
"""

from .errors import (
    DimensionMismatch,
    InconsistentGroup,
    InvalidInput,
    MuniformError,
    ResourceCapExceeded,
    UnphysicalNoise,
)
from .pauli import PauliString, from_sites, identity, single
from .lattice import (
    Circuit,
    Graph,
    Lattice,
    cluster_generators,
    cluster_graph,
    extended_generators,
    extended_graph,
    ghz_generators,
    graph_generators,
    graph_state_circuit,
)
from .stabilizer import (
    DensityMatrix,
    StabilizerGroup,
    apply_circuit,
    reduced_density_matrix,
    state_vector,
)
from .uniformity import (
    WeightReport,
    coset_min_weight,
    is_m_uniform,
    min_weight_bruteforce,
    min_weight_windowed,
    subset_sweep_check,
)
from .syndrome import (
    IdentifyResult,
    SyndromeTable,
    build_table,
    pure_code_check,
    syndrome,
    syndrome_string,
)
from .noisesim import (
    NoiseModel,
    RateFit,
    SyndromeCounts,
    fit_error_rates,
    pattern_series,
    run_exact,
    run_sampled,
)
from .encoding import (
    LogicalEncoding,
    encode_statevector,
    logical_space_is_m_uniform,
    minimal_A_search,
)
from . import kernels

__version__ = "0.1.0"

__all__ = [
    "MuniformError",
    "DimensionMismatch",
    "InvalidInput",
    "InconsistentGroup",
    "UnphysicalNoise",
    "ResourceCapExceeded",
    "PauliString",
    "identity",
    "single",
    "from_sites",
    "Lattice",
    "Graph",
    "Circuit",
    "cluster_generators",
    "extended_generators",
    "ghz_generators",
    "graph_generators",
    "cluster_graph",
    "extended_graph",
    "graph_state_circuit",
    "StabilizerGroup",
    "DensityMatrix",
    "reduced_density_matrix",
    "state_vector",
    "apply_circuit",
    "WeightReport",
    "min_weight_bruteforce",
    "min_weight_windowed",
    "coset_min_weight",
    "is_m_uniform",
    "subset_sweep_check",
    "SyndromeTable",
    "IdentifyResult",
    "syndrome",
    "syndrome_string",
    "build_table",
    "pure_code_check",
    "NoiseModel",
    "SyndromeCounts",
    "RateFit",
    "run_exact",
    "run_sampled",
    "pattern_series",
    "fit_error_rates",
    "LogicalEncoding",
    "encode_statevector",
    "logical_space_is_m_uniform",
    "minimal_A_search",
    "kernels",
    "__version__",
]
