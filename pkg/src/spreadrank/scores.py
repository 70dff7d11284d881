"""Per-node score tables and the estimator base class for all measures."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .graph import Graph
from .validation import ensure_graph

#: Number of significant digits a ScoreTable keeps. Tables are quantized at
#: construction so that a table written to CSV and parsed back compares equal.
SCORE_DIGITS = 12


def quantize_score(x: float, digits: int = SCORE_DIGITS) -> float:
    """Round to ``digits`` significant decimal digits."""
    return float(f"{float(x):.{digits}g}")


@dataclass(frozen=True)
class ScoreTable:
    """Scores of one measure for every node of a graph.

    ``measure`` is one of DC, EC, CC, BC, GC, EVE, SIR. ``params`` carries the
    measure's parameters (beta/gamma for EVE and SIR) or is empty. Scores are
    stored at :data:`SCORE_DIGITS` significant digits, aligned with ``labels``.
    """

    measure: str
    labels: tuple[str, ...]
    scores: np.ndarray
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        scores = np.array([quantize_score(x) for x in np.asarray(self.scores, dtype=float)])
        if scores.shape != (len(self.labels),):
            raise ValueError("scores must have exactly one entry per label")
        if not np.all(np.isfinite(scores)):
            raise ValueError("scores must be finite")
        if np.any(scores < 0):
            raise ValueError("scores must be >= 0")
        scores.setflags(write=False)
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "params", dict(self.params))

    def __len__(self) -> int:
        return len(self.labels)

    def score_of(self, label: str) -> float:
        return float(self.scores[self.labels.index(label)])

    def aligned_to(self, labels: tuple[str, ...]) -> "ScoreTable":
        """Reorder this table to the given label order (same label set)."""
        if self.labels == labels:
            return self
        if set(self.labels) != set(labels):
            raise ValueError("cannot align tables over different node sets")
        pos = {lab: i for i, lab in enumerate(self.labels)}
        order = [pos[lab] for lab in labels]
        return ScoreTable(
            measure=self.measure,
            labels=labels,
            scores=self.scores[order],
            params=self.params,
        )


class NodeScorer(BaseEstimator):
    """Base class for node-influence measures.

    Subclasses implement ``_score(graph) -> ndarray`` and set ``measure``.
    Following the usual estimator contract, constructor arguments are stored
    verbatim and validated in :meth:`fit`; fitted state lives in
    ``scores_``/``labels_``.
    """

    measure: str = ""

    def fit(self, graph: Graph, y=None):
        g = ensure_graph(graph)
        self._check_params(g)
        self.scores_ = np.asarray(self._score(g), dtype=float)
        self.labels_ = g.labels
        self.n_nodes_ = g.node_count
        return self

    def score_table(self) -> ScoreTable:
        check_is_fitted(self, "scores_")
        return ScoreTable(
            measure=self.measure,
            labels=self.labels_,
            scores=self.scores_,
            params=self._table_params(),
        )

    def fit_score_table(self, graph: Graph) -> ScoreTable:
        return self.fit(graph).score_table()

    def _check_params(self, graph: Graph) -> None:
        pass

    def _table_params(self) -> dict:
        return {}

    def _score(self, graph: Graph) -> np.ndarray:
        raise NotImplementedError
