"""Polymer-expansion toolkit for decorated AKLT models.

Exact enumeration of loops, self-avoiding walks, and edge-self-avoiding
trails on the hexagonal and square lattices; assembly of the cluster
expansion convergence criterion; closed-form stability and local-order
bounds; and Monte-Carlo oracles validating the polymer representation.
"""

from .bounds import (
    BoundResult,
    ModelConstants,
    constants_for,
    correlation_bound,
    f_bound,
    indistinguishability_bound,
    ltqo_bound,
    recompute_ltqo_constant,
)
from .criterion import (
    DivergenceError,
    KpuReport,
    RegimeCheck,
    RegimeError,
    WeightParams,
    corr_regime_check,
    verify_kpu_hex,
    verify_kpu_square,
    weight_magnitude,
)
from .lattice import (
    AnnulusSpec,
    BoundaryWindow,
    LatticeKind,
    Region,
    WindowKind,
    boundary_window,
    classify_boundary,
    face_distance,
)
from .oracle import (
    McConfig,
    PartitionCheck,
    SpherePoint,
    brute_force_partition,
    mc_degree4_identity,
    mc_edge_identity,
    reference_port_compare,
)
from .polymer_hex import (
    EnumerationConstraints,
    Loop,
    Walk,
    generate_loops,
    generate_walks,
    walk_concatenation_count,
)
from .polymer_square import (
    Trail,
    TrailConstraints,
    generate_closed_trails,
    generate_trails,
    trails_through_vertex,
)
from .tables import (
    TableId,
    TableResult,
    loops_through_edge_table,
    q_table,
    r_table,
    s_table,
    square_cn_table,
    walks_to_boundary_table,
)

__version__ = "1.0.0"

__all__ = [
    "AnnulusSpec", "BoundResult", "BoundaryWindow", "DivergenceError",
    "EnumerationConstraints", "KpuReport", "LatticeKind", "Loop", "McConfig",
    "ModelConstants", "PartitionCheck", "Region", "RegimeCheck",
    "RegimeError", "SpherePoint", "TableId", "TableResult", "Trail",
    "TrailConstraints", "Walk", "WeightParams", "WindowKind",
    "boundary_window", "brute_force_partition", "classify_boundary",
    "constants_for", "corr_regime_check", "correlation_bound",
    "f_bound", "face_distance", "generate_closed_trails", "generate_loops",
    "generate_trails", "generate_walks", "indistinguishability_bound",
    "loops_through_edge_table", "ltqo_bound", "mc_degree4_identity",
    "mc_edge_identity", "q_table", "r_table", "recompute_ltqo_constant",
    "reference_port_compare", "s_table", "square_cn_table",
    "trails_through_vertex", "verify_kpu_hex", "verify_kpu_square",
    "walk_concatenation_count", "walks_to_boundary_table",
    "weight_magnitude",
]
