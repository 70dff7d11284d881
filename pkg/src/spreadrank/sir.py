"""Discrete-time SIR Monte Carlo simulation with reproducible streams.

Model (synchronous updates): at each step, every node infected at the start
of the step attempts to infect each of its currently susceptible neighbors
with probability beta, then recovers with probability gamma. Nodes infected
during a step become active the next step. The run ends when no infected
nodes remain; its influence is the number of recovered nodes (the seed
included, since every ever-infected node ends recovered).

Randomness contract
-------------------
Every uniform draw is a pure function of (base_seed, seed_node, run_index,
counter): the run key is derived by chained splitmix64 finalizer rounds,

    k = mix(mix(mix(base_seed) + G * (seed_node + 1)) + G * (run_index + 1))
    draw(c) = mix(k + G * (c + 1)) >> 11, scaled by 2^-53

with G = 0x9E3779B97F4A7C15 and all arithmetic mod 2^64. Within a run,
counters are consumed in a fixed order: per step, for each active node u in
ascending index, one draw per susceptible neighbor v in ascending index,
then one recovery draw for u. This makes each run an independent stream and
lets the batched engine reproduce the scalar engine bit for bit, regardless
of how (node, run) work units are scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SimulationError
from .graph import Graph, connected_components
from .scores import NodeScorer, ScoreTable
from .validation import check_node_index, check_positive_int, check_probability, ensure_graph

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

#: A run that exceeds 100 * node_count steps is flagged as an internal error.
STEP_CAP_FACTOR = 100

_SUSCEPTIBLE, _INFECTED, _NEWLY_INFECTED, _RECOVERED = 0, 1, 2, 3


def _mix64(z: int) -> int:
    z &= _MASK64
    z ^= z >> 30
    z = (z * _MIX1) & _MASK64
    z ^= z >> 27
    z = (z * _MIX2) & _MASK64
    z ^= z >> 31
    return z


def run_key(base_seed: int, seed_node: int, run_index: int) -> int:
    """64-bit stream key for one (seed_node, run_index) simulation run."""
    k = _mix64(int(base_seed) & _MASK64)
    k = _mix64(k + _GOLDEN * (seed_node + 1))
    k = _mix64(k + _GOLDEN * (run_index + 1))
    return k


def _uniform_scalar(key: int, counter: int) -> float:
    return (_mix64(key + _GOLDEN * (counter + 1)) >> 11) * 2.0**-53


_G_NP = np.uint64(_GOLDEN)
_M1_NP = np.uint64(_MIX1)
_M2_NP = np.uint64(_MIX2)


def _uniform_vector(keys: np.ndarray, counters: np.ndarray) -> np.ndarray:
    """Vectorized counterpart of :func:`_uniform_scalar` (uint64 arrays)."""
    z = keys + _G_NP * (counters + np.uint64(1))
    z = z ^ (z >> np.uint64(30))
    z = z * _M1_NP
    z = z ^ (z >> np.uint64(27))
    z = z * _M2_NP
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


@dataclass(frozen=True)
class SirConfig:
    """Simulation parameters: infection/recovery probabilities, run count, seed."""

    beta: float
    gamma: float
    runs: int = 1000
    base_seed: int = 0

    def __post_init__(self):
        check_probability(self.beta, "beta")
        check_probability(self.gamma, "gamma", allow_zero=False)
        check_positive_int(self.runs, "runs")
        if not 0 <= int(self.base_seed) < 2**64:
            raise ValueError("base_seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True)
class SirResult:
    """Monte Carlo influence of one seed node."""

    seed_node: int
    mean_influence: float
    std_influence: float
    runs: int


def sir_single_run(
    graph: Graph,
    seed_node: int,
    beta: float,
    gamma: float,
    *,
    base_seed: int = 0,
    run_index: int = 0,
) -> int:
    """One simulation run; returns the number of recovered nodes at the end.

    This is the scalar reference engine; the batched engine used by
    :func:`sir_influence` reproduces it exactly.
    """
    g = ensure_graph(graph)
    seed_node = check_node_index(g, seed_node, "seed_node")
    beta = check_probability(beta, "beta")
    gamma = check_probability(gamma, "gamma", allow_zero=False)
    key = run_key(base_seed, seed_node, run_index)

    n = g.node_count
    status = [_SUSCEPTIBLE] * n
    status[seed_node] = _INFECTED
    counter = 0
    step_cap = STEP_CAP_FACTOR * n
    steps = 0
    recovered = 0
    infected_count = 1
    while infected_count:
        steps += 1
        if steps > step_cap:
            raise SimulationError(
                f"run (seed={seed_node}, run={run_index}) still active after {step_cap} steps"
            )
        active = [u for u in range(n) if status[u] == _INFECTED]
        for u in active:
            for v in g.adjacency[u]:
                if status[v] == _SUSCEPTIBLE:
                    draw = _uniform_scalar(key, counter)
                    counter += 1
                    if draw < beta:
                        status[v] = _NEWLY_INFECTED
                        infected_count += 1
            draw = _uniform_scalar(key, counter)
            counter += 1
            if draw < gamma:
                status[u] = _RECOVERED
                infected_count -= 1
                recovered += 1
        for v in range(n):
            if status[v] == _NEWLY_INFECTED:
                status[v] = _INFECTED
    return recovered


class _ComponentView:
    """Adjacency of one connected component reindexed to local 0..k-1."""

    def __init__(self, graph: Graph, members: np.ndarray):
        self.members = members  # sorted global indices
        local = {int(gidx): i for i, gidx in enumerate(members)}
        self.adjacency = [
            np.array([local[int(v)] for v in graph.adjacency[int(gidx)]], dtype=np.int64)
            for gidx in members
        ]
        self.local_of = local


def _simulate_batch(
    view: _ComponentView,
    seed_local: int,
    beta: float,
    gamma: float,
    keys: np.ndarray,
    step_cap: int,
) -> np.ndarray:
    """All runs for one seed node at once; returns per-run influence counts.

    Runs advance in lockstep but draw from their own streams (see module
    docstring), so row r equals ``sir_single_run`` with run_index r.
    """
    n_local = len(view.adjacency)
    runs = keys.size
    status = np.zeros((runs, n_local), dtype=np.int8)
    status[:, seed_local] = _INFECTED
    counters = np.zeros(runs, dtype=np.uint64)
    steps = 0
    one = np.uint64(1)
    while True:
        infected = status == _INFECTED
        active_cols = np.flatnonzero(infected.any(axis=0))
        if active_cols.size == 0:
            break
        steps += 1
        if steps > step_cap:
            raise SimulationError(f"batch still active after {step_cap} steps")
        for u in active_cols:
            act_u = infected[:, u]
            for v in view.adjacency[u]:
                rows = np.flatnonzero(act_u & (status[:, v] == _SUSCEPTIBLE))
                if rows.size == 0:
                    continue
                draws = _uniform_vector(keys[rows], counters[rows])
                counters[rows] += one
                hit = rows[draws < beta]
                if hit.size:
                    status[hit, v] = _NEWLY_INFECTED
            rows = np.flatnonzero(act_u)
            draws = _uniform_vector(keys[rows], counters[rows])
            counters[rows] += one
            rec = rows[draws < gamma]
            if rec.size:
                status[rec, u] = _RECOVERED
        np.copyto(status, _INFECTED, where=status == _NEWLY_INFECTED)
    return (status == _RECOVERED).sum(axis=1).astype(np.int64)


def _influences(graph: Graph, seed_node: int, cfg: SirConfig, view: _ComponentView) -> np.ndarray:
    keys = np.array(
        [run_key(cfg.base_seed, seed_node, r) for r in range(cfg.runs)], dtype=np.uint64
    )
    step_cap = STEP_CAP_FACTOR * graph.node_count
    return _simulate_batch(
        view, view.local_of[seed_node], float(cfg.beta), float(cfg.gamma), keys, step_cap
    )


def _summarize(seed_node: int, influences: np.ndarray, runs: int) -> SirResult:
    # exact integer sums keep mean/std platform-independent
    sx = int(influences.sum())
    mean = sx / runs
    if runs > 1:
        sxx = int(np.dot(influences, influences))
        var = (runs * sxx - sx * sx) / (runs * (runs - 1))
        std = float(np.sqrt(var)) if var > 0 else 0.0
    else:
        std = 0.0
    return SirResult(seed_node=seed_node, mean_influence=mean, std_influence=std, runs=runs)


def _component_view(graph: Graph, seed_node: int) -> _ComponentView:
    comp = connected_components(graph)
    members = np.flatnonzero(comp == comp[seed_node])
    return _ComponentView(graph, members)


def sir_influence(graph: Graph, seed_node: int, cfg: SirConfig) -> SirResult:
    """Mean and sample standard deviation of influence over ``cfg.runs`` runs."""
    g = ensure_graph(graph)
    seed_node = check_node_index(g, seed_node, "seed_node")
    view = _component_view(g, seed_node)
    inf = _influences(g, seed_node, cfg, view)
    return _summarize(seed_node, inf, cfg.runs)


def simulate_all(graph: Graph, cfg: SirConfig) -> list[SirResult]:
    """One SirResult per node, seeding each node in turn (index order)."""
    g = ensure_graph(graph)
    comp = connected_components(g)
    views: dict[int, _ComponentView] = {}
    results: list[SirResult] = []
    for u in range(g.node_count):
        cid = int(comp[u])
        if cid not in views:
            views[cid] = _ComponentView(g, np.flatnonzero(comp == cid))
        inf = _influences(g, u, cfg, views[cid])
        results.append(_summarize(u, inf, cfg.runs))
    return results


def sir_score_table(graph: Graph, cfg: SirConfig) -> ScoreTable:
    """Ground-truth influence table: one Monte Carlo mean per node."""
    g = ensure_graph(graph)
    results = simulate_all(g, cfg)
    return ScoreTable(
        measure="SIR",
        labels=g.labels,
        scores=[r.mean_influence for r in results],
        params={"beta": float(cfg.beta), "gamma": float(cfg.gamma), "runs": cfg.runs,
                "base_seed": int(cfg.base_seed)},
    )


class SirSimulator(NodeScorer):
    """Estimator wrapper: fit(graph) runs the full per-node simulation.

    Fitted attributes: ``scores_`` (mean influences), ``results_`` (one
    :class:`SirResult` per node, with standard deviations).
    """

    measure = "SIR"

    def __init__(self, beta: float = 0.1, gamma: float = 1.0, runs: int = 1000,
                 base_seed: int = 0):
        self.beta = beta
        self.gamma = gamma
        self.runs = runs
        self.base_seed = base_seed

    def _config(self) -> SirConfig:
        return SirConfig(
            beta=self.beta, gamma=self.gamma, runs=self.runs, base_seed=self.base_seed
        )

    def _check_params(self, graph: Graph) -> None:
        self._config()

    def _table_params(self) -> dict:
        return {"beta": float(self.beta), "gamma": float(self.gamma),
                "runs": int(self.runs), "base_seed": int(self.base_seed)}

    def _score(self, graph: Graph) -> np.ndarray:
        self.results_ = simulate_all(graph, self._config())
        return np.array([r.mean_influence for r in self.results_])
