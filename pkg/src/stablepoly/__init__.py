"""Exact tools for stable matchings and the geometry of their relaxation."""

from .adjacency import (
    AdjacencyVerdict,
    Witness,
    adjacency_verdict,
    are_adjacent,
    convex_decompose,
    nonadjacency_witness,
    removed_edge_witness,
    uniformly_oriented,
)
from .instances import (
    Edge,
    Instance,
    InstanceError,
    NodeId,
    SIDE_A,
    SIDE_B,
    exhaustive_complete,
    instance_from_json,
    instance_to_json,
    is_valid,
    load_instance,
    parse_weights,
    random_instance,
    random_instances,
    remove_edge,
    validate,
)
from .lattice import (
    Component,
    Decomposition,
    SwapStabilityError,
    UniformityError,
    decompose,
    enumerate_stable,
    meet_join,
    swap,
)
from .matchings import Matching, blocking_pairs, gale_shapley, is_stable, matchings_iter
from .polytope import (
    ConstraintSystem,
    Membership,
    Point,
    Row,
    Vertex,
    VertexReport,
    build_system,
)
from .simplex import LpResult, solve_lp
from .verification import VerificationResult, verify_instance

__version__ = "0.1.0"

__all__ = [
    "AdjacencyVerdict",
    "Component",
    "ConstraintSystem",
    "Decomposition",
    "Edge",
    "Instance",
    "InstanceError",
    "LpResult",
    "Matching",
    "Membership",
    "NodeId",
    "Point",
    "Row",
    "SIDE_A",
    "SIDE_B",
    "SwapStabilityError",
    "UniformityError",
    "VerificationResult",
    "Vertex",
    "VertexReport",
    "Witness",
    "adjacency_verdict",
    "are_adjacent",
    "blocking_pairs",
    "build_system",
    "convex_decompose",
    "decompose",
    "enumerate_stable",
    "exhaustive_complete",
    "gale_shapley",
    "instance_from_json",
    "instance_to_json",
    "is_stable",
    "is_valid",
    "load_instance",
    "matchings_iter",
    "meet_join",
    "nonadjacency_witness",
    "parse_weights",
    "random_instance",
    "random_instances",
    "remove_edge",
    "removed_edge_witness",
    "solve_lp",
    "swap",
    "uniformly_oriented",
    "validate",
    "verify_instance",
    "__version__",
]
