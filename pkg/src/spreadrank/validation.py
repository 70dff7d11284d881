"""Input validation helpers shared by estimators and the CLI."""

from __future__ import annotations

from .graph import Graph


def ensure_graph(obj) -> Graph:
    if not isinstance(obj, Graph):
        raise TypeError(f"expected a Graph, got {type(obj).__name__}")
    return obj


def check_probability(value, name: str, *, allow_zero: bool = True) -> float:
    try:
        p = float(value)
    except (TypeError, ValueError):
        raise ValueError(f"{name} must be a number, got {value!r}") from None
    low_ok = p >= 0.0 if allow_zero else p > 0.0
    if not (low_ok and p <= 1.0):
        bound = "[0, 1]" if allow_zero else "(0, 1]"
        raise ValueError(f"{name} must be a probability in {bound}, got {p}")
    return p


def check_node_index(graph: Graph, node: int, name: str = "node") -> int:
    node = int(node)
    if not 0 <= node < graph.node_count:
        raise ValueError(
            f"{name} index {node} out of range for graph with {graph.node_count} nodes"
        )
    return node


def check_positive_int(value, name: str) -> int:
    try:
        v = int(value)
    except (TypeError, ValueError):
        raise ValueError(f"{name} must be an integer, got {value!r}") from None
    if v < 1:
        raise ValueError(f"{name} must be >= 1, got {v}")
    return v
