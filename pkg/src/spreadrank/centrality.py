"""The five baseline centrality measures: degree, eigenvector, closeness,
betweenness, and gravity.

All are estimators over an immutable :class:`~spreadrank.graph.Graph`:
``measure.fit(g)`` computes ``scores_`` (one float per node). Summation
orders are fixed by node index so results are reproducible bit-for-bit.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .errors import ConvergenceError
from .graph import Graph, bfs_distances, k_shell
from .scores import NodeScorer


class DegreeCentrality(NodeScorer):
    """Degree divided by n - 1."""

    measure = "DC"

    def _check_params(self, graph: Graph) -> None:
        if graph.node_count < 2:
            raise ValueError("degree centrality needs at least 2 nodes")

    def _score(self, graph: Graph) -> np.ndarray:
        return graph.degrees / (graph.node_count - 1)


class EigenvectorCentrality(NodeScorer):
    """Principal eigenvector of the adjacency structure by power iteration.

    Iterates x <- normalize((A + I) x) from the uniform positive vector; the
    identity shift leaves the eigenvector unchanged while guaranteeing a
    spectral gap on connected graphs (plain A-iteration oscillates forever on
    bipartite graphs such as stars). Converged when successive normalized
    iterates differ by less than ``tol`` in max-norm.

    On disconnected graphs the dominant component wins; nodes outside it may
    legitimately score ~0.
    """

    measure = "EC"

    def __init__(self, tol: float = 1e-8, max_iter: int = 10_000):
        self.tol = tol
        self.max_iter = max_iter

    def _check_params(self, graph: Graph) -> None:
        if graph.edge_count == 0:
            raise ValueError("eigenvector centrality needs at least one edge")

    def _score(self, graph: Graph) -> np.ndarray:
        n = graph.node_count
        adjacency = graph.adjacency
        x = np.full(n, 1.0 / np.sqrt(n))
        residual = np.inf
        for _ in range(self.max_iter):
            ax = np.array([x[adjacency[u]].sum() for u in range(n)])
            nxt = ax + x
            nxt /= np.linalg.norm(nxt)
            residual = float(np.max(np.abs(nxt - x)))
            x = nxt
            if residual < self.tol:
                return x
        raise ConvergenceError(
            f"power iteration did not converge in {self.max_iter} iterations",
            residual=residual,
        )


class ClosenessCentrality(NodeScorer):
    """Component-scaled closeness.

    score(u) = ((r - 1) / (n - 1)) * ((r - 1) / sum of distances to the r - 1
    reachable nodes), where r counts nodes reachable from u including u.
    Finite on disconnected graphs; isolated nodes score 0.
    """

    measure = "CC"

    def _check_params(self, graph: Graph) -> None:
        if graph.node_count < 2:
            raise ValueError("closeness centrality needs at least 2 nodes")

    def _score(self, graph: Graph) -> np.ndarray:
        n = graph.node_count
        out = np.zeros(n)
        for u in range(n):
            dist = bfs_distances(graph, u).dist
            mask = dist > 0
            r = int(mask.sum()) + 1
            if r == 1:
                continue
            total = int(dist[mask].sum())
            out[u] = ((r - 1) / (n - 1)) * ((r - 1) / total)
        return out


class BetweennessCentrality(NodeScorer):
    """Fraction of pairwise shortest paths passing through each node.

    Single-source accumulation with fractional credit over multiple shortest
    paths (exact, unsampled), endpoints excluded, normalized by
    (n - 1)(n - 2) / 2. For n < 3 every score is 0.
    """

    measure = "BC"

    def _score(self, graph: Graph) -> np.ndarray:
        n = graph.node_count
        raw = np.zeros(n)
        if n < 3:
            return raw
        adjacency = graph.adjacency
        for s in range(n):
            # forward sweep: BFS with shortest-path counts and predecessors
            dist = np.full(n, -1, dtype=np.int64)
            sigma = np.zeros(n)
            preds: list[list[int]] = [[] for _ in range(n)]
            dist[s] = 0
            sigma[s] = 1.0
            order: list[int] = []
            queue = deque([s])
            while queue:
                u = queue.popleft()
                order.append(u)
                du = dist[u]
                for v in adjacency[u]:
                    if dist[v] < 0:
                        dist[v] = du + 1
                        queue.append(v)
                    if dist[v] == du + 1:
                        sigma[v] += sigma[u]
                        preds[v].append(u)
            # backward sweep: dependency accumulation
            delta = np.zeros(n)
            for w in reversed(order):
                coeff = (1.0 + delta[w]) / sigma[w]
                for u in preds[w]:
                    delta[u] += sigma[u] * coeff
                if w != s:
                    raw[w] += delta[w]
        # raw counts ordered pairs; undirected pairs = raw / 2, then normalize
        return raw / ((n - 1) * (n - 2))


class GravityCentrality(NodeScorer):
    """Newton-style score over the 3-hop neighborhood.

    score(i) = sum over nodes j with 1 <= d(i, j) <= radius of
    ks(i) * ks(j) / d(i, j)^2, where ks is the k-shell index. Contributions
    are accumulated in (distance, node index) order.
    """

    measure = "GC"

    def __init__(self, radius: int = 3):
        self.radius = radius

    def _check_params(self, graph: Graph) -> None:
        if int(self.radius) < 1:
            raise ValueError(f"radius must be >= 1, got {self.radius}")

    def _score(self, graph: Graph) -> np.ndarray:
        n = graph.node_count
        radius = int(self.radius)
        shells = k_shell(graph).astype(float)
        out = np.zeros(n)
        for i in range(n):
            # depth-limited BFS keyed by hop count
            dist = np.full(n, -1, dtype=np.int64)
            dist[i] = 0
            frontier = [i]
            total = 0.0
            for d in range(1, radius + 1):
                nxt: list[int] = []
                for u in frontier:
                    for v in graph.adjacency[u]:
                        if dist[v] < 0:
                            dist[v] = d
                            nxt.append(v)
                for v in sorted(nxt):
                    total += shells[i] * shells[v] / (d * d)
                if not nxt:
                    break
                frontier = nxt
            out[i] = total
        return out
