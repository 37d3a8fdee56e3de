"""Flip distance between triangulations of a planar point set.

Two engines: an exhaustive breadth-first oracle over the flip graph for
small inputs, and a bounded-nondeterminism decision procedure for
"distance equals k" whose work depends on k rather than on the size of
the flip graph.  The flip_dag module exposes the dependency structure of
flip sequences that justifies the second engine.
"""

from .geometry import (
    COLLINEAR,
    LEFT,
    RIGHT,
    Point,
    is_strictly_convex_quad,
    orientation,
    segments_cross,
)
from .triangulation import (
    Edge,
    InadmissibleFlip,
    InvalidTriangulation,
    PointSet,
    PointSetMismatch,
    Triangle,
    Triangulation,
    changed_edges,
    make_edge,
    make_triangle,
)
from .flip_dag import (
    FlipDag,
    FlipRecord,
    FlipSequence,
    InvalidFlipSequence,
    apply_sequence,
    build_dag,
    classify_essential,
    components,
    is_topological_sort,
    path_exists,
    replay_permutation,
    sample_topological_sorts,
)
from .oracle import (
    SearchBudgetExceeded,
    bfs_distance,
    enumerate_minimal_solutions,
    enumerate_triangulations,
)
from .fpt_solver import (
    Action,
    MachineState,
    SolverStats,
    compositions,
    decide_flip_distance_eq,
    exists_solution_with_exactly_k_flips,
    legal_actions,
    run_iteration,
)
from .instances import (
    GenerationError,
    Instance,
    InstanceFormatError,
    generate_instance,
    parse_instance,
    render_instance,
    scan_triangulation,
)

__version__ = "0.1.0"

__all__ = [
    "COLLINEAR",
    "LEFT",
    "RIGHT",
    "Point",
    "is_strictly_convex_quad",
    "orientation",
    "segments_cross",
    "Edge",
    "Triangle",
    "PointSet",
    "Triangulation",
    "InvalidTriangulation",
    "InadmissibleFlip",
    "PointSetMismatch",
    "changed_edges",
    "make_edge",
    "make_triangle",
    "FlipDag",
    "FlipRecord",
    "FlipSequence",
    "InvalidFlipSequence",
    "apply_sequence",
    "build_dag",
    "classify_essential",
    "components",
    "is_topological_sort",
    "path_exists",
    "replay_permutation",
    "sample_topological_sorts",
    "SearchBudgetExceeded",
    "bfs_distance",
    "enumerate_minimal_solutions",
    "enumerate_triangulations",
    "Action",
    "MachineState",
    "SolverStats",
    "compositions",
    "decide_flip_distance_eq",
    "exists_solution_with_exactly_k_flips",
    "legal_actions",
    "run_iteration",
    "GenerationError",
    "Instance",
    "InstanceFormatError",
    "generate_instance",
    "parse_instance",
    "render_instance",
    "scan_triangulation",
]
