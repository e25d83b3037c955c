"""Information-centrality maximization by incident edge addition.

Public surface: graph loading/generation, exact and estimated resistance
kernels, the exact and approximate greedy optimizers with baselines and a
brute-force oracle, and the CLI entry point.
"""

from .graphs import (
    EdgeVector,
    Graph,
    ParseError,
    component_labels,
    generate_ba,
    generate_ws,
    is_connected,
    largest_connected_component,
    load_edge_list,
    write_edge_list,
)
from .linalg import (
    DENSE_NODE_LIMIT,
    SolverConvergenceError,
    SolverSpec,
    approx_eff_res,
    build_laplacian,
    hutchinson_sample_count,
    hutchinson_trace,
    lapl_solve,
    pseudoinverse,
    sherman_morrison_update,
    solver_tolerance,
)
from .centrality import (
    CentralityScore,
    NodeResistance,
    information_centrality,
    information_centrality_via_B,
    information_matrix_inverse,
    marginal_gain_exact,
    node_resistance,
    node_resistance_grounded,
    rank_all_by_centrality,
    resistance_pair,
)
from .greedy import (
    BASELINE_STRATEGIES,
    CandidateEdge,
    GainEstimate,
    GreedyTrace,
    TraceStep,
    approxi_sm,
    baseline_select,
    brute_force_optimum,
    default_candidates,
    exact_sm,
    insertion_trace,
    vreff_comp,
)
from .cli import RunConfig, RunReport, cmd_compare_perf, cmd_gen, cmd_optimize, main

__all__ = [
    "BASELINE_STRATEGIES",
    "CandidateEdge",
    "CentralityScore",
    "DENSE_NODE_LIMIT",
    "EdgeVector",
    "GainEstimate",
    "Graph",
    "GreedyTrace",
    "NodeResistance",
    "ParseError",
    "RunConfig",
    "RunReport",
    "SolverConvergenceError",
    "SolverSpec",
    "TraceStep",
    "approx_eff_res",
    "approxi_sm",
    "baseline_select",
    "brute_force_optimum",
    "build_laplacian",
    "cmd_compare_perf",
    "cmd_gen",
    "cmd_optimize",
    "component_labels",
    "default_candidates",
    "exact_sm",
    "generate_ba",
    "generate_ws",
    "hutchinson_sample_count",
    "hutchinson_trace",
    "information_centrality",
    "information_centrality_via_B",
    "information_matrix_inverse",
    "insertion_trace",
    "is_connected",
    "lapl_solve",
    "largest_connected_component",
    "load_edge_list",
    "main",
    "marginal_gain_exact",
    "node_resistance",
    "node_resistance_grounded",
    "pseudoinverse",
    "rank_all_by_centrality",
    "resistance_pair",
    "sherman_morrison_update",
    "solver_tolerance",
    "vreff_comp",
    "write_edge_list",
]
