"""CSV emission and parsing for all result tables.

Schemas (exact headers):
    scores       node,score
    SIR results  node,mean_influence,std_influence,runs
    evaluation   measure,tau,monotonicity,top_k_overlap,k
    figure data  measure,rank_index,sir_score

Floats are printed with 12 significant digits, which matches the precision
score tables are stored at, so emit -> parse -> emit is byte-stable.
"""

from __future__ import annotations

import csv
import io

from .errors import DataMismatchError
from .evaluation import EvalReport, score_to_ranklist
from .graph import Graph, label_sort_key
from .scores import SCORE_DIGITS, ScoreTable
from .sir import SirResult


def _fmt(x: float) -> str:
    return f"{float(x):.{SCORE_DIGITS}g}"


def write_scores_csv(table: ScoreTable, fh) -> None:
    """Emit node,score rows sorted by descending score (label tie-break)."""
    ranks = score_to_ranklist(table)
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["node", "score"])
    for idx in ranks.order:
        writer.writerow([table.labels[idx], _fmt(table.scores[idx])])


def scores_csv_text(table: ScoreTable) -> str:
    buf = io.StringIO()
    write_scores_csv(table, buf)
    return buf.getvalue()


def read_scores_csv(fh, measure: str, params: dict | None = None) -> ScoreTable:
    reader = csv.reader(fh)
    header = next(reader, None)
    if header != ["node", "score"]:
        raise ValueError(f"unexpected scores CSV header: {header}")
    labels: list[str] = []
    scores: list[float] = []
    for row in reader:
        if not row:
            continue
        labels.append(row[0])
        scores.append(float(row[1]))
    return ScoreTable(measure=measure, labels=tuple(labels), scores=scores,
                      params=params or {})


def write_sir_csv(graph: Graph, results: list[SirResult], fh) -> None:
    """Emit one row per node in internal (first-appearance) index order."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["node", "mean_influence", "std_influence", "runs"])
    for res in results:
        writer.writerow([
            graph.labels[res.seed_node],
            _fmt(res.mean_influence),
            _fmt(res.std_influence),
            res.runs,
        ])


def sir_csv_text(graph: Graph, results: list[SirResult]) -> str:
    buf = io.StringIO()
    write_sir_csv(graph, results, buf)
    return buf.getvalue()


def read_sir_csv(fh, graph: Graph, params: dict | None = None) -> ScoreTable:
    """Parse a SIR CSV and align it to the graph's node order.

    Raises :class:`DataMismatchError` (naming the labels) when the file does
    not cover exactly the graph's node set.
    """
    reader = csv.reader(fh)
    header = next(reader, None)
    if header != ["node", "mean_influence", "std_influence", "runs"]:
        raise ValueError(f"unexpected SIR CSV header: {header}")
    means: dict[str, float] = {}
    for row in reader:
        if not row:
            continue
        means[row[0]] = float(row[1])
    have = set(means)
    want = set(graph.labels)
    if have != want:
        raise DataMismatchError(
            "SIR CSV does not cover the graph's node set",
            missing=tuple(sorted(want - have, key=label_sort_key)),
            extra=tuple(sorted(have - want, key=label_sort_key)),
        )
    return ScoreTable(
        measure="SIR",
        labels=graph.labels,
        scores=[means[lab] for lab in graph.labels],
        params=params or {},
    )


def write_eval_csv(reports: list[EvalReport], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["measure", "tau", "monotonicity", "top_k_overlap", "k"])
    for rep in reports:
        writer.writerow([rep.measure, _fmt(rep.tau), _fmt(rep.monotonicity),
                         rep.top_k_overlap, rep.k])


def eval_csv_text(reports: list[EvalReport]) -> str:
    buf = io.StringIO()
    write_eval_csv(reports, buf)
    return buf.getvalue()


def write_figure_csv(series: list[tuple[str, list[tuple[int, float]]]], fh) -> None:
    """Emit the rank-index-vs-SIR-score series of several measures."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["measure", "rank_index", "sir_score"])
    for measure, points in series:
        for idx, score in points:
            writer.writerow([measure, idx, _fmt(score)])


def figure_csv_text(series: list[tuple[str, list[tuple[int, float]]]]) -> str:
    buf = io.StringIO()
    write_figure_csv(series, buf)
    return buf.getvalue()
