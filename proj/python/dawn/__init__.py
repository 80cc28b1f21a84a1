"""Weighted DAWN shortest paths over CSR graphs."""

from ._core import (
    CsrGraph,
    DomainError,
    EdgeList,
    ParseError,
    SizeError,
    SolveStats,
    UnsupportedFormatError,
    apply_weight_mode,
    apsp,
    bellman_ford_sssp,
    build_csr,
    cli_main,
    dijkstra_sssp,
    floyd_warshall_apsp,
    generate_random_graph,
    govm_sssp,
    gsvm_sssp,
    mssp,
    parse_edge_list,
    parse_matrix_market,
    run_benchmark,
    run_mu_experiment,
    to_edge_list_text,
    to_matrix_market_text,
)

__all__ = [
    "CsrGraph",
    "DomainError",
    "EdgeList",
    "ParseError",
    "SizeError",
    "SolveStats",
    "UnsupportedFormatError",
    "apply_weight_mode",
    "apsp",
    "bellman_ford_sssp",
    "build_csr",
    "cli_main",
    "dijkstra_sssp",
    "floyd_warshall_apsp",
    "generate_random_graph",
    "govm_sssp",
    "gsvm_sssp",
    "mssp",
    "parse_edge_list",
    "parse_matrix_market",
    "run_benchmark",
    "run_mu_experiment",
    "to_edge_list_text",
    "to_matrix_market_text",
]
