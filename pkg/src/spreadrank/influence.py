"""Expected-influence estimation (the EVE score).

Approximates a node's expected outbreak size under the SIR model using only
shortest-path hop distances: each reachable node at hop distance h
contributes (beta/gamma)^h, and the node itself contributes 1. On trees with
gamma = 1 this equals the exact expected influence; elsewhere it is the
shortest-path approximation (multi-path routes are ignored by design).
"""

from __future__ import annotations

import warnings
from typing import Iterable

import numpy as np

from .graph import DistanceRow, Graph, bfs_distances
from .scores import NodeScorer
from .validation import check_probability


def score_from_distance_row(row: DistanceRow, ratio: float) -> float:
    """EVE score of one node from its distance row.

    Contributions are summed in ascending hop distance using per-distance
    counts (count * ratio^h with a running power), so the result is
    bit-identical no matter how the distances were produced.
    """
    dist = row.dist
    finite = dist[dist > 0]
    score = 1.0  # the node itself: ratio^0
    if finite.size == 0:
        return score
    counts = np.bincount(finite)
    power = 1.0
    for h in range(1, counts.size):
        power *= ratio
        if counts[h]:
            score += counts[h] * power
    return score


def scores_from_distance_rows(rows: Iterable[DistanceRow], beta: float, gamma: float) -> np.ndarray:
    """EVE scores for every row, in row order. Rows may be streamed."""
    ratio = beta / gamma
    return np.array([score_from_distance_row(row, ratio) for row in rows])


class ExpectedInfluence(NodeScorer):
    """Expected-influence score (tag EVE) with parameters beta and gamma.

    Requires beta in [0, 1] and gamma in (0, 1]. If beta > gamma the formula
    is still evaluated literally, with a warning (per-target contributions
    then exceed 1, which the shortest-path reading cannot justify).

    Distance rows are computed one source at a time, so memory stays O(n)
    regardless of graph size.
    """

    measure = "EVE"

    def __init__(self, beta: float = 0.1, gamma: float = 1.0):
        self.beta = beta
        self.gamma = gamma

    def _check_params(self, graph: Graph) -> None:
        beta = check_probability(self.beta, "beta")
        gamma = check_probability(self.gamma, "gamma", allow_zero=False)
        if beta > gamma:
            warnings.warn(
                f"beta ({beta}) exceeds gamma ({gamma}); per-target contributions "
                "exceed 1 and the score is no longer a probability-weighted count",
                UserWarning,
                stacklevel=2,
            )

    def _table_params(self) -> dict:
        return {"beta": float(self.beta), "gamma": float(self.gamma)}

    def _score(self, graph: Graph) -> np.ndarray:
        rows = (bfs_distances(graph, u) for u in range(graph.node_count))
        return scores_from_distance_rows(rows, float(self.beta), float(self.gamma))
