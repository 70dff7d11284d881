"""spreadrank: rank network nodes by expected spreading influence under SIR."""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    ConvergenceError,
    DataMismatchError,
    GraphParseError,
    SimulationError,
    SpreadrankError,
)
from .graph import (
    UNREACHABLE,
    DistanceRow,
    Graph,
    GraphStats,
    IngestReport,
    all_pairs_distances,
    bfs_distances,
    connected_components,
    graph_stats,
    ingest_edge_list,
    k_shell,
    label_sort_key,
    load_edge_list,
    parse_edge_list,
)
from .scores import ScoreTable, NodeScorer, quantize_score
from .centrality import (
    BetweennessCentrality,
    ClosenessCentrality,
    DegreeCentrality,
    EigenvectorCentrality,
    GravityCentrality,
)
from .influence import ExpectedInfluence, scores_from_distance_rows
from .sir import (
    SirConfig,
    SirResult,
    SirSimulator,
    simulate_all,
    sir_influence,
    sir_score_table,
    sir_single_run,
)
from .evaluation import (
    EvalReport,
    RankList,
    evaluate_measure,
    kendall_tau,
    monotonicity,
    rank_index_series,
    score_to_ranklist,
    top_k_overlap,
)
from .pipeline import ExperimentConfig, make_measure, parse_config, run_pipeline

__all__ = [
    "__version__",
    "UNREACHABLE",
    "Graph",
    "DistanceRow",
    "GraphStats",
    "IngestReport",
    "parse_edge_list",
    "ingest_edge_list",
    "load_edge_list",
    "bfs_distances",
    "all_pairs_distances",
    "connected_components",
    "k_shell",
    "graph_stats",
    "label_sort_key",
    "ScoreTable",
    "NodeScorer",
    "quantize_score",
    "DegreeCentrality",
    "EigenvectorCentrality",
    "ClosenessCentrality",
    "BetweennessCentrality",
    "GravityCentrality",
    "ExpectedInfluence",
    "scores_from_distance_rows",
    "SirConfig",
    "SirResult",
    "SirSimulator",
    "sir_single_run",
    "sir_influence",
    "sir_score_table",
    "simulate_all",
    "RankList",
    "EvalReport",
    "score_to_ranklist",
    "kendall_tau",
    "monotonicity",
    "top_k_overlap",
    "rank_index_series",
    "evaluate_measure",
    "ExperimentConfig",
    "parse_config",
    "run_pipeline",
    "make_measure",
    "SpreadrankError",
    "GraphParseError",
    "ConvergenceError",
    "SimulationError",
    "DataMismatchError",
    "ConfigError",
]
