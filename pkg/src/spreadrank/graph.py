"""Immutable undirected simple graph, edge-list ingestion, and basic graph algorithms.

The graph model is deliberately small: undirected, unweighted, no self-loops,
no parallel edges. Node labels from input files are kept as opaque strings and
mapped to contiguous internal indices 0..n-1 in first-appearance order.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import GraphParseError

# Sentinel for "no path". Kept negative (never a large finite hop count) so a
# consumer that forgets to mask cannot mistake it for a real distance.
UNREACHABLE: int = -1

_COMMENT_PREFIXES = ("%", "#")
_INT_LABEL = re.compile(r"^\d+$")


def label_sort_key(label: str):
    """Sort key for external labels: numeric labels compare as integers.

    All-digit labels sort before non-numeric ones; within each class the
    ordering is the obvious one. Used for every deterministic tie-break.
    """
    if _INT_LABEL.match(label):
        return (0, int(label), label)
    return (1, 0, label)


@dataclass(frozen=True)
class Graph:
    """Undirected unweighted simple graph with a label <-> index map.

    ``adjacency`` holds one sorted ``numpy`` index array per node. Instances
    are immutable after construction and safe to share across threads.
    """

    labels: tuple[str, ...]
    adjacency: tuple[np.ndarray, ...]
    index: dict[str, int] = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self.index:
            object.__setattr__(self, "index", {lab: i for i, lab in enumerate(self.labels)})
        for arr in self.adjacency:
            arr.setflags(write=False)
        self._validate()

    def _validate(self):
        n = len(self.labels)
        if len(self.adjacency) != n:
            raise ValueError("adjacency size does not match label count")
        if len(self.index) != n:
            raise ValueError("duplicate labels")
        for u, nbrs in enumerate(self.adjacency):
            if nbrs.size:
                if nbrs.min() < 0 or nbrs.max() >= n:
                    raise ValueError(f"neighbor index out of range for node {u}")
                if np.any(np.diff(nbrs) <= 0):
                    raise ValueError(f"adjacency of node {u} not sorted/duplicate-free")
                if np.any(nbrs == u):
                    raise ValueError(f"self-loop on node {u}")
        # symmetry: every (u, v) must appear as (v, u)
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u not in self.adjacency[v]:
                    raise ValueError(f"edge ({u}, {v}) not symmetric")

    @property
    def node_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return sum(a.size for a in self.adjacency) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.array([a.size for a in self.adjacency], dtype=np.int64)

    def neighbors(self, u: int) -> np.ndarray:
        return self.adjacency[u]

    def label_of(self, u: int) -> str:
        return self.labels[u]

    def index_of(self, label: str) -> int:
        return self.index[label]

    @classmethod
    def from_edges(cls, edges, extra_nodes=()) -> "Graph":
        """Build a graph from (u, v) label pairs; labels may be str or int.

        Self-loops are dropped (their endpoints are still registered) and
        duplicate edges collapse. ``extra_nodes`` registers isolated nodes.
        """
        labels: list[str] = []
        index: dict[str, int] = {}

        def intern(lab) -> int:
            lab = str(lab)
            if lab not in index:
                index[lab] = len(labels)
                labels.append(lab)
            return index[lab]

        pairs: set[tuple[int, int]] = set()
        for a, b in edges:
            ia, ib = intern(a), intern(b)
            if ia == ib:
                continue
            pairs.add((min(ia, ib), max(ia, ib)))
        for x in extra_nodes:
            intern(x)
        adj: list[list[int]] = [[] for _ in labels]
        for a, b in pairs:
            adj[a].append(b)
            adj[b].append(a)
        adjacency = tuple(np.array(sorted(nbrs), dtype=np.int64) for nbrs in adj)
        return cls(labels=tuple(labels), adjacency=adjacency)


@dataclass(frozen=True)
class IngestReport:
    """Per-file ingestion counters reported alongside a parsed graph."""

    graph: Graph
    edge_lines: int = 0
    comment_lines: int = 0
    blank_lines: int = 0
    self_loops_dropped: int = 0
    duplicates_collapsed: int = 0
    extra_token_lines: int = 0

    def summary(self) -> str:
        g = self.graph
        parts = [f"{g.node_count} nodes, {g.edge_count} edges"]
        if self.self_loops_dropped:
            parts.append(f"{self.self_loops_dropped} self-loop(s) dropped")
        if self.duplicates_collapsed:
            parts.append(f"{self.duplicates_collapsed} duplicate edge(s) collapsed")
        if self.extra_token_lines:
            parts.append(f"{self.extra_token_lines} line(s) had extra tokens (ignored)")
        return "; ".join(parts)


def ingest_edge_list(text: str) -> IngestReport:
    """Parse edge-list text and return the graph plus ingestion counters.

    Format: one edge per line, two labels separated by a comma or any run of
    whitespace. Lines starting with ``%`` or ``#`` and blank lines are
    ignored. A third token is ignored (counted). A line with a single token
    is a parse error. Self-loop lines register the node but drop the edge.
    """
    labels: list[str] = []
    index: dict[str, int] = {}

    def intern(lab: str) -> int:
        if lab not in index:
            index[lab] = len(labels)
            labels.append(lab)
        return index[lab]

    edges: set[tuple[int, int]] = set()
    edge_lines = comments = blanks = loops = dups = extras = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            blanks += 1
            continue
        if line.startswith(_COMMENT_PREFIXES):
            comments += 1
            continue
        tokens = line.replace(",", " ").split()
        if len(tokens) < 2:
            raise GraphParseError(
                f"expected two node labels, got {len(tokens)} token(s): {raw!r}", lineno
            )
        if len(tokens) > 2:
            extras += 1
        edge_lines += 1
        a, b = intern(tokens[0]), intern(tokens[1])
        if a == b:
            loops += 1
            continue
        key = (min(a, b), max(a, b))
        if key in edges:
            dups += 1
        else:
            edges.add(key)

    adj: list[list[int]] = [[] for _ in labels]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    adjacency = tuple(np.array(sorted(nbrs), dtype=np.int64) for nbrs in adj)
    graph = Graph(labels=tuple(labels), adjacency=adjacency)
    return IngestReport(
        graph=graph,
        edge_lines=edge_lines,
        comment_lines=comments,
        blank_lines=blanks,
        self_loops_dropped=loops,
        duplicates_collapsed=dups,
        extra_token_lines=extras,
    )


def parse_edge_list(text: str) -> Graph:
    """Parse edge-list text into a Graph (see :func:`ingest_edge_list`)."""
    return ingest_edge_list(text).graph


def load_edge_list(path) -> IngestReport:
    """Read an edge-list file (UTF-8) and parse it."""
    with open(path, "r", encoding="utf-8") as fh:
        return ingest_edge_list(fh.read())


@dataclass(frozen=True)
class DistanceRow:
    """Hop distances from one source node; UNREACHABLE where no path exists."""

    source: int
    dist: np.ndarray

    def __post_init__(self):
        self.dist.setflags(write=False)

    def reachable(self) -> np.ndarray:
        return self.dist >= 0


def bfs_distances(graph: Graph, source: int) -> DistanceRow:
    """Exact hop distances from ``source`` by breadth-first traversal."""
    n = graph.node_count
    if not 0 <= source < n:
        raise ValueError(f"source index {source} out of range for {n} nodes")
    dist = np.full(n, UNREACHABLE, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    adjacency = graph.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u]
        for v in adjacency[u]:
            if dist[v] < 0:
                dist[v] = du + 1
                queue.append(v)
    return DistanceRow(source=source, dist=dist)


def all_pairs_distances(graph: Graph) -> list[DistanceRow]:
    """One DistanceRow per node, ordered by source index."""
    return [bfs_distances(graph, u) for u in range(graph.node_count)]


def connected_components(graph: Graph) -> np.ndarray:
    """Component id per node; ids are dense, assigned in node-index order."""
    n = graph.node_count
    comp = np.full(n, -1, dtype=np.int64)
    cid = 0
    for start in range(n):
        if comp[start] >= 0:
            continue
        comp[start] = cid
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in graph.adjacency[u]:
                if comp[v] < 0:
                    comp[v] = cid
                    queue.append(v)
        cid += 1
    return comp


def k_shell(graph: Graph) -> np.ndarray:
    """Shell index per node by iterative minimum-degree pruning.

    At stage k = 0, 1, 2, ... all nodes whose remaining degree is <= k are
    removed (cascading) and assigned shell k. Order-independent.
    """
    n = graph.node_count
    deg = graph.degrees.copy()
    shell = np.zeros(n, dtype=np.int64)
    alive = np.ones(n, dtype=bool)
    remaining = n
    k = 0
    while remaining:
        peel = [u for u in range(n) if alive[u] and deg[u] <= k]
        if not peel:
            k += 1
            continue
        queue = deque(peel)
        for u in peel:
            alive[u] = False
        while queue:
            u = queue.popleft()
            shell[u] = k
            remaining -= 1
            for v in graph.adjacency[u]:
                if alive[v]:
                    deg[v] -= 1
                    if deg[v] <= k:
                        alive[v] = False
                        queue.append(v)
        k += 1
    return shell


@dataclass(frozen=True)
class GraphStats:
    """Dataset summary: node/edge counts, degree statistics, density."""

    n: int
    m: int
    mean_degree: float
    max_degree: int
    density: float


def graph_stats(graph: Graph) -> GraphStats:
    n = graph.node_count
    m = graph.edge_count
    degs = graph.degrees
    return GraphStats(
        n=n,
        m=m,
        mean_degree=2.0 * m / n if n else 0.0,
        max_degree=int(degs.max()) if n else 0,
        density=2.0 * m / (n * (n - 1)) if n > 1 else 0.0,
    )
