"""Experiment orchestration: config parsing, SIR caching, and output emission.

Config files use a flat ``key = value`` grammar, one pair per line, ``#``
comments allowed:

    graph = data/karate.edges        # repeatable, one line per dataset
    settings = 0.1:1, 0.05:1, 0.05:0.25   # beta:gamma pairs
    runs = 1000                      # SIR runs per node (default 1000)
    seed = 0                         # base RNG seed (default 0)
    measures = dc, ec, cc, bc, gc, eve    # default: all six
    top_fraction = 0.05              # top-k cut (default 0.05)
    output_dir = out/karate          # required

For every (dataset, setting) pair the pipeline writes per-measure score
CSVs, the SIR ground-truth CSV, an evaluation CSV, and a figure-data CSV
under ``output_dir``, plus one run manifest. The SIR stage is cached by a
sidecar recording (graph content hash, beta, gamma, runs, base_seed); the
cache is reused only when all five match. Outputs contain no wall-clock
data unless ``stamp`` is requested, so identical config + seed reproduce a
byte-identical output tree.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .centrality import (
    BetweennessCentrality,
    ClosenessCentrality,
    DegreeCentrality,
    EigenvectorCentrality,
    GravityCentrality,
)
from .csvio import (
    eval_csv_text,
    figure_csv_text,
    read_sir_csv,
    scores_csv_text,
    sir_csv_text,
)
from .errors import ConfigError
from .evaluation import evaluate_measure, rank_index_series, score_to_ranklist
from .graph import Graph, IngestReport, load_edge_list
from .influence import ExpectedInfluence
from .scores import ScoreTable
from .sir import SirConfig, simulate_all
from .validation import check_positive_int, check_probability

STRUCTURE_MEASURES = ("DC", "EC", "CC", "BC", "GC")
ALL_MEASURES = STRUCTURE_MEASURES + ("EVE",)

_FACTORIES = {
    "DC": DegreeCentrality,
    "EC": EigenvectorCentrality,
    "CC": ClosenessCentrality,
    "BC": BetweennessCentrality,
    "GC": GravityCentrality,
}


def make_measure(tag: str, beta: float | None = None, gamma: float | None = None):
    """Instantiate the estimator for a measure tag (case-insensitive)."""
    tag = tag.upper()
    if tag == "EVE":
        if beta is None or gamma is None:
            raise ValueError("EVE requires beta and gamma")
        return ExpectedInfluence(beta=beta, gamma=gamma)
    if tag in _FACTORIES:
        return _FACTORIES[tag]()
    raise ValueError(f"unknown measure {tag!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated pipeline configuration."""

    graph_paths: tuple[str, ...]
    settings: tuple[tuple[float, float], ...]
    output_dir: str
    runs: int = 1000
    base_seed: int = 0
    measures: tuple[str, ...] = ALL_MEASURES
    top_fraction: float = 0.05
    stamp: bool = False

    def echo(self) -> dict:
        """Config echo for the manifest (output_dir excluded so that runs
        into different directories stay byte-identical)."""
        return {
            "graphs": list(self.graph_paths),
            "settings": [{"beta": b, "gamma": g} for b, g in self.settings],
            "runs": self.runs,
            "seed": self.base_seed,
            "measures": list(self.measures),
            "top_fraction": self.top_fraction,
        }


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate the flat key-value config grammar."""
    values: dict[str, list[str]] = {}
    bad_fields: list[str] = []
    problems: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            problems.append(f"line {lineno} is not 'key = value'")
            bad_fields.append(f"line {lineno}")
            continue
        key, _, val = line.partition("=")
        values.setdefault(key.strip().lower(), []).append(val.strip())

    def single(key: str, default: str | None = None) -> str | None:
        got = values.pop(key, None)
        if got is None:
            return default
        if len(got) > 1:
            problems.append(f"{key} given {len(got)} times")
            bad_fields.append(key)
        return got[-1]

    graphs = tuple(values.pop("graph", ()))
    if not graphs:
        problems.append("at least one 'graph' entry is required")
        bad_fields.append("graph")

    settings: list[tuple[float, float]] = []
    raw_settings = single("settings")
    if not raw_settings:
        problems.append("'settings' is required (beta:gamma pairs)")
        bad_fields.append("settings")
    else:
        for part in raw_settings.split(","):
            part = part.strip()
            try:
                beta_s, gamma_s = part.split(":")
                beta = check_probability(beta_s, "beta")
                gamma = check_probability(gamma_s, "gamma", allow_zero=False)
                settings.append((beta, gamma))
            except ValueError:
                problems.append(f"bad setting {part!r} (expected beta:gamma)")
                bad_fields.append("settings")

    runs = 1000
    try:
        runs = check_positive_int(single("runs", "1000"), "runs")
    except ValueError as exc:
        problems.append(str(exc))
        bad_fields.append("runs")

    seed = 0
    raw_seed = single("seed", "0")
    try:
        seed = int(raw_seed)
        if not 0 <= seed < 2**64:
            raise ValueError
    except (TypeError, ValueError):
        problems.append(f"seed must be an unsigned 64-bit integer, got {raw_seed!r}")
        bad_fields.append("seed")

    measures: tuple[str, ...] = ALL_MEASURES
    raw_measures = single("measures")
    if raw_measures:
        chosen = []
        for part in raw_measures.split(","):
            tag = part.strip().upper()
            if tag not in ALL_MEASURES:
                problems.append(f"unknown measure {part.strip()!r}")
                bad_fields.append("measures")
            else:
                chosen.append(tag)
        measures = tuple(chosen)

    top_fraction = 0.05
    raw_fraction = single("top_fraction", "0.05")
    try:
        top_fraction = float(raw_fraction)
        if not 0 < top_fraction <= 1:
            raise ValueError
    except (TypeError, ValueError):
        problems.append(f"top_fraction must be in (0, 1], got {raw_fraction!r}")
        bad_fields.append("top_fraction")

    output_dir = single("output_dir")
    if not output_dir:
        problems.append("'output_dir' is required")
        bad_fields.append("output_dir")

    if values:
        unknown = ", ".join(sorted(values))
        problems.append(f"unknown keys: {unknown}")
        bad_fields.extend(sorted(values))

    if problems:
        raise ConfigError("; ".join(problems), fields=tuple(dict.fromkeys(bad_fields)))

    return ExperimentConfig(
        graph_paths=graphs,
        settings=tuple(settings),
        output_dir=output_dir,
        runs=runs,
        base_seed=seed,
        measures=measures,
        top_fraction=top_fraction,
    )


def load_config(path) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def file_sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def setting_dirname(beta: float, gamma: float) -> str:
    return f"beta{beta:g}_gamma{gamma:g}"


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _sir_cache_key(graph_hash: str, beta: float, gamma: float, runs: int, seed: int) -> dict:
    return {
        "graph_sha256": graph_hash,
        "beta": beta,
        "gamma": gamma,
        "runs": runs,
        "base_seed": seed,
    }


def compute_or_load_sir(
    graph: Graph,
    graph_hash: str,
    cfg: SirConfig,
    csv_path: Path,
    log=None,
) -> tuple[ScoreTable, bool]:
    """Return the SIR table for this setting, reusing the cached CSV when its
    sidecar matches (graph hash, beta, gamma, runs, base_seed) exactly.

    The table is always read back from the CSV so that cached and freshly
    computed paths yield identical downstream results.
    """
    meta_path = csv_path.with_suffix(csv_path.suffix + ".meta.json")
    key = _sir_cache_key(graph_hash, cfg.beta, cfg.gamma, cfg.runs, cfg.base_seed)
    cached = False
    if csv_path.exists() and meta_path.exists():
        try:
            cached = json.loads(meta_path.read_text(encoding="utf-8")) == key
        except (OSError, json.JSONDecodeError):
            cached = False
    if not cached:
        if log:
            log(f"simulating SIR (beta={cfg.beta:g}, gamma={cfg.gamma:g}, "
                f"runs={cfg.runs}) for {graph.node_count} nodes")
        results = simulate_all(graph, cfg)
        _write_text(csv_path, sir_csv_text(graph, results))
        _write_text(meta_path, json.dumps(key, sort_keys=True) + "\n")
    elif log:
        log(f"reusing cached SIR table {csv_path.name}")
    params = dict(key)
    params.pop("graph_sha256")
    with open(csv_path, "r", encoding="utf-8") as fh:
        return read_sir_csv(fh, graph, params=params), cached


@dataclass
class PipelineRun:
    """What one pipeline invocation produced (for logging and tests)."""

    output_dir: Path
    eval_csvs: list[Path] = field(default_factory=list)
    sir_cached: int = 0
    sir_computed: int = 0


def run_pipeline(config: ExperimentConfig, log=None) -> PipelineRun:
    out_root = Path(config.output_dir)
    out_root.mkdir(parents=True, exist_ok=True)
    run = PipelineRun(output_dir=out_root)
    dataset_records = []

    for graph_path in config.graph_paths:
        report: IngestReport = load_edge_list(graph_path)
        graph = report.graph
        graph_hash = file_sha256(graph_path)
        stem = Path(graph_path).stem
        dataset_dir = out_root / stem
        if log:
            log(f"{stem}: {report.summary()}")
        dataset_records.append({
            "path": str(graph_path),
            "sha256": graph_hash,
            "n": graph.node_count,
            "m": graph.edge_count,
        })

        structure_tables: dict[str, ScoreTable] = {}
        for tag in config.measures:
            if tag == "EVE":
                continue
            table = make_measure(tag).fit_score_table(graph)
            structure_tables[tag] = table
            _write_text(dataset_dir / f"scores_{tag.lower()}.csv", scores_csv_text(table))

        for beta, gamma in config.settings:
            setting_dir = dataset_dir / setting_dirname(beta, gamma)
            sir_cfg = SirConfig(beta=beta, gamma=gamma, runs=config.runs,
                                base_seed=config.base_seed)
            sir_table, cached = compute_or_load_sir(
                graph, graph_hash, sir_cfg, setting_dir / "sir.csv", log=log
            )
            run.sir_cached += int(cached)
            run.sir_computed += int(not cached)

            tables: list[ScoreTable] = []
            for tag in config.measures:
                if tag == "EVE":
                    table = make_measure("EVE", beta=beta, gamma=gamma).fit_score_table(graph)
                    _write_text(setting_dir / "scores_eve.csv", scores_csv_text(table))
                else:
                    table = structure_tables[tag]
                tables.append(table)

            reports = [evaluate_measure(t, sir_table, config.top_fraction) for t in tables]
            eval_path = setting_dir / "evaluation.csv"
            _write_text(eval_path, eval_csv_text(reports))
            run.eval_csvs.append(eval_path)

            series = [
                (t.measure, rank_index_series(score_to_ranklist(t), sir_table))
                for t in tables
            ]
            series.append(("SIR", rank_index_series(score_to_ranklist(sir_table), sir_table)))
            _write_text(setting_dir / "figure_data.csv", figure_csv_text(series))

    manifest = {
        "tool": "spreadrank",
        "version": __version__,
        "config": config.echo(),
        "datasets": dataset_records,
    }
    if config.stamp:
        manifest["timestamp"] = datetime.now(timezone.utc).isoformat()
    _write_text(out_root / "manifest.json",
                json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return run
