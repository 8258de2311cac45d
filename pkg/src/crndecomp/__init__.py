"""Decompose chemical reaction networks into independent and incidence-independent subnetworks."""

__version__ = "0.1.0"

from .decomp import (
    CoordinateGraph,
    Decomposition,
    MalformedPartition,
    brute_force_decompositions,
    coordinate_graph,
    count_decompositions,
    deficiency_relation,
    enumerate_coarsenings,
    finest_incidence_independent,
    finest_independent,
    is_bi_independent,
    is_incidence_independent,
    is_independent,
    weak_reversibility_of_decomposition,
)
from .exactla import RationalMatrix, RowBasis, rank, row_basis, solve_in_span
from .graphops import is_reversible, is_weakly_reversible, linkage_structure, reachable
from .kinetics import (
    MassActionSystem,
    embedded_deficiency_zero_report,
    equilibrium_intersection_check,
    evaluate_rates,
    is_complex_balanced_at,
    is_equilibrium,
    sfrf,
    zero_support_analysis,
)
from .model import Complex, Network, NetworkMatrices, NetworkStats, Reaction, Species, build_matrices, network_stats
from .parser import NetworkDocument, ParseError, format_network, parse_network, read_network

import types as _types

__all__ = [n for n, v in list(globals().items()) if not n.startswith("_") and not isinstance(v, _types.ModuleType)]
