"""Ranking construction and the three evaluation metrics.

Metrics: Kendall's tau (tau-a form, ties count as neither concordant nor
discordant), ranking monotonicity, and top-k% overlap against a ground-truth
ranking, plus the rank-index-vs-score series used for trend plots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataMismatchError
from .graph import label_sort_key
from .scores import ScoreTable

#: Significant decimal digits used when grouping scores into rank levels.
#: Analytically equal scores (e.g. of structurally symmetric nodes) can differ
#: by floating-point noise; rounding before grouping merges them.
LEVEL_DIGITS = 9


@dataclass(frozen=True)
class RankList:
    """Deterministic descending ordering plus tie-aware rank levels.

    ``order`` is a permutation of 0..n-1 (descending score, ties broken by
    ascending label, numeric-aware). ``rank_level`` maps each node index to a
    dense level id (1, 2, ...); nodes whose scores agree to
    :data:`LEVEL_DIGITS` significant digits share a level.
    """

    labels: tuple[str, ...]
    order: np.ndarray
    rank_level: np.ndarray

    def __post_init__(self):
        self.order.setflags(write=False)
        self.rank_level.setflags(write=False)
        n = len(self.labels)
        if sorted(self.order.tolist()) != list(range(n)):
            raise ValueError("order must be a permutation of 0..n-1")
        levels_along = self.rank_level[self.order]
        if n and (levels_along[0] != 1 or np.any(np.diff(levels_along) < 0)):
            raise ValueError("rank levels must be dense and non-decreasing along order")

    def __len__(self) -> int:
        return len(self.labels)

    def top_labels(self, k: int) -> set[str]:
        return {self.labels[i] for i in self.order[:k]}


def score_to_ranklist(table: ScoreTable) -> RankList:
    """Order nodes by descending score; group equal (rounded) scores into levels."""
    n = len(table)
    keys = sorted(
        range(n),
        key=lambda i: (-table.scores[i], label_sort_key(table.labels[i])),
    )
    order = np.array(keys, dtype=np.int64)
    rank_level = np.zeros(n, dtype=np.int64)
    level = 0
    prev = None
    for i in order:
        rounded = f"{table.scores[i]:.{LEVEL_DIGITS}g}"
        if rounded != prev:
            level += 1
            prev = rounded
        rank_level[i] = level
    return RankList(labels=table.labels, order=order, rank_level=rank_level)


def _check_same_nodes(a_labels, b_labels, what: str) -> None:
    sa, sb = set(a_labels), set(b_labels)
    if sa != sb:
        raise DataMismatchError(
            f"{what} must cover the same node set",
            missing=tuple(sorted(sa - sb, key=label_sort_key)),
            extra=tuple(sorted(sb - sa, key=label_sort_key)),
        )


def kendall_tau(a: ScoreTable, b: ScoreTable) -> float:
    """Kendall's tau-a between two score tables over the same node set.

    A pair is concordant when the score differences have the same strict
    sign, discordant when opposite; pairs tied in either table count as
    neither. Denominator is n(n-1)/2 regardless of ties.
    """
    _check_same_nodes(a.labels, b.labels, "score tables")
    n = len(a)
    if n < 2:
        raise ValueError("kendall_tau needs at least 2 nodes")
    b = b.aligned_to(a.labels)
    sa, sb = a.scores, b.scores
    da = np.sign(sa[:, None] - sa[None, :])
    db = np.sign(sb[:, None] - sb[None, :])
    prod = da * db
    iu = np.triu_indices(n, k=1)
    concordant = int((prod[iu] > 0).sum())
    discordant = int((prod[iu] < 0).sum())
    return (concordant - discordant) / (0.5 * n * (n - 1))


def monotonicity(ranks: RankList) -> float:
    """How finely a ranking separates nodes into distinct levels.

    (1 - sum over levels of n_r(n_r - 1) / (n(n - 1)))^2: 1 when all nodes
    get distinct levels, 0 when they share one level.
    """
    n = len(ranks)
    if n < 2:
        raise ValueError("monotonicity needs at least 2 nodes")
    _, counts = np.unique(ranks.rank_level, return_counts=True)
    tie_mass = int((counts * (counts - 1)).sum())
    return (1.0 - tie_mass / (n * (n - 1))) ** 2


def top_k_overlap(a: RankList, b: RankList, fraction: float) -> tuple[int, int]:
    """Overlap between the top-k entries of two rankings; k = max(1, floor(f*n))."""
    _check_same_nodes(a.labels, b.labels, "rank lists")
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    k = max(1, math.floor(fraction * len(a)))
    overlap = len(a.top_labels(k) & b.top_labels(k))
    return overlap, k


def rank_index_series(measure_rank: RankList, sir: ScoreTable) -> list[tuple[int, float]]:
    """(rank position, ground-truth score) pairs along a measure's ordering."""
    _check_same_nodes(measure_rank.labels, sir.labels, "rank list and score table")
    sir = sir.aligned_to(measure_rank.labels)
    return [(i, float(sir.scores[node])) for i, node in enumerate(measure_rank.order)]


@dataclass(frozen=True)
class EvalReport:
    """Metrics of one measure against the SIR ground truth."""

    measure: str
    tau: float
    monotonicity: float
    top_k_overlap: int
    k: int


def evaluate_measure(table: ScoreTable, sir: ScoreTable, fraction: float) -> EvalReport:
    """Assemble the full report for one measure table."""
    ranks = score_to_ranklist(table)
    sir_ranks = score_to_ranklist(sir)
    overlap, k = top_k_overlap(ranks, sir_ranks, fraction)
    return EvalReport(
        measure=table.measure,
        tau=kendall_tau(table, sir),
        monotonicity=monotonicity(ranks),
        top_k_overlap=overlap,
        k=k,
    )
