from maglap._version import __version__
from maglap.avp import (
    AvpInstance,
    basis_instance,
    check_sum_bound,
    check_theorem,
    fan_minimum,
    run_selftest,
)
from maglap.bounds import (
    BaseBound,
    BoundContext,
    HalfBandBound,
    ZagrebBound,
    flux_phase_scan,
    half_band_check,
    opposing_alpha,
    zagreb_bound_check,
    zagreb_bound_via_avp,
)
from maglap.coloring import (
    ColoringSearch,
    PartitionWitness,
    bipartite_oracle,
    bipartite_search,
    is_bipartite_spectral,
    is_bipartite_spectral_k,
    is_tripartite_spectral,
    three_color_oracle,
    tripartite_search,
)
from maglap.datasets import load_reference_graph, load_reference_graphs
from maglap.flux import (
    basis_fluxes,
    construct_gauge,
    equivalent_to_standard,
    gauge_equivalent,
    walk_flux,
)
from maglap.graph import (
    CycleBasis,
    DirectedGraph,
    complement_in_complete,
    cycle_basis,
    enumerate_orientations,
    from_edge_list,
    is_connected,
    min_regular_degree,
    orient_complete,
    regular_supergraph,
    zagreb_index,
)
from maglap.generators import random_graph, random_regular
from maglap.io import parse_graph, read_graph, write_graph
from maglap.linalg import adjoint, determinant, eigh, matmul, restricted_trace, trace
from maglap.operator import (
    ThetaAssignment,
    constant_theta,
    gauge_conjugate,
    incidence,
    laplacian,
    quadratic_form,
)

__all__ = [
    "DirectedGraph",
    "CycleBasis",
    "ThetaAssignment",
    "from_edge_list",
    "is_connected",
    "cycle_basis",
    "enumerate_orientations",
    "orient_complete",
    "complement_in_complete",
    "regular_supergraph",
    "min_regular_degree",
    "zagreb_index",
    "random_graph",
    "random_regular",
    "parse_graph",
    "read_graph",
    "write_graph",
    "eigh",
    "determinant",
    "trace",
    "matmul",
    "adjoint",
    "restricted_trace",
    "constant_theta",
    "incidence",
    "laplacian",
    "quadratic_form",
    "gauge_conjugate",
    "walk_flux",
    "basis_fluxes",
    "gauge_equivalent",
    "construct_gauge",
    "equivalent_to_standard",
    "ColoringSearch",
    "PartitionWitness",
    "bipartite_oracle",
    "three_color_oracle",
    "is_bipartite_spectral",
    "is_bipartite_spectral_k",
    "is_tripartite_spectral",
    "bipartite_search",
    "tripartite_search",
    "AvpInstance",
    "check_theorem",
    "check_sum_bound",
    "fan_minimum",
    "basis_instance",
    "run_selftest",
    "BaseBound",
    "BoundContext",
    "opposing_alpha",
    "ZagrebBound",
    "HalfBandBound",
    "zagreb_bound_check",
    "zagreb_bound_via_avp",
    "half_band_check",
    "flux_phase_scan",
    "load_reference_graphs",
    "load_reference_graph",
    "__version__",
]
