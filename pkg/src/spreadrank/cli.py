"""Command-line interface.

Subcommands:
    rank      score one measure on a graph, emit node,score CSV
    sir       Monte Carlo SIR ground truth, emit per-node influence CSV
    eval      compare measures against a SIR CSV, emit metrics + figure data
    pipeline  run a full experiment from a config file

Exit codes: 0 success, 1 usage error, 2 data/validation error, 3 internal
error (e.g. a simulation exceeding its step cap).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .csvio import (
    eval_csv_text,
    figure_csv_text,
    read_sir_csv,
    scores_csv_text,
    sir_csv_text,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    DataMismatchError,
    GraphParseError,
    SimulationError,
)
from .evaluation import evaluate_measure, rank_index_series, score_to_ranklist
from .graph import load_edge_list
from .pipeline import ALL_MEASURES, load_config, make_measure, run_pipeline
from .sir import SirConfig, simulate_all

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; this toolkit reserves 2 for data
    # errors, so usage problems are rerouted through UsageError -> exit 1.
    def error(self, message):
        raise UsageError(message)


def _load_graph(path: str, quiet: bool = False):
    report = load_edge_list(path)
    if not quiet:
        print(f"loaded {Path(path).name}: {report.summary()}", file=sys.stderr)
    return report.graph


def _write_or_print(text: str, output: str | None) -> None:
    if output:
        Path(output).parent.mkdir(parents=True, exist_ok=True)
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_rank(args) -> int:
    tag = args.measure.upper()
    if tag not in ALL_MEASURES:
        raise UsageError(f"unknown measure {args.measure!r} (choose from "
                         + ", ".join(m.lower() for m in ALL_MEASURES) + ")")
    if tag == "EVE":
        if args.beta is None or args.gamma is None:
            raise UsageError("--measure eve requires --beta and --gamma")
    elif args.beta is not None or args.gamma is not None:
        raise UsageError(f"--beta/--gamma only apply to eve, not {args.measure}")
    graph = _load_graph(args.graph, args.quiet)
    measure = make_measure(tag, beta=args.beta, gamma=args.gamma)
    table = measure.fit_score_table(graph)
    _write_or_print(scores_csv_text(table), args.output)
    return EXIT_OK


def _cmd_sir(args) -> int:
    cfg = SirConfig(beta=args.beta, gamma=args.gamma, runs=args.runs,
                    base_seed=args.seed)
    graph = _load_graph(args.graph, args.quiet)
    results = simulate_all(graph, cfg)
    _write_or_print(sir_csv_text(graph, results), args.output)
    return EXIT_OK


def _parse_measures(raw: str) -> list[str]:
    tags = []
    for part in raw.split(","):
        tag = part.strip().upper()
        if tag not in ALL_MEASURES + ("SIR",):
            raise UsageError(f"unknown measure {part.strip()!r}")
        tags.append(tag)
    return tags


def _cmd_eval(args) -> int:
    tags = _parse_measures(args.measure)
    needs_params = "EVE" in tags
    if needs_params and (args.beta is None or args.gamma is None):
        raise UsageError("evaluating eve requires --beta and --gamma")
    if not needs_params and (args.beta is not None or args.gamma is not None):
        raise UsageError("--beta/--gamma only apply when eve is evaluated")
    graph = _load_graph(args.graph, args.quiet)
    with open(args.sir, "r", encoding="utf-8") as fh:
        sir_table = read_sir_csv(fh, graph)

    tables = []
    for tag in tags:
        if tag == "SIR":
            tables.append(sir_table)
        else:
            tables.append(make_measure(tag, beta=args.beta, gamma=args.gamma)
                          .fit_score_table(graph))
    reports = [evaluate_measure(t, sir_table, args.top_fraction) for t in tables]
    series = [(t.measure, rank_index_series(score_to_ranklist(t), sir_table))
              for t in tables]

    if args.output:
        outdir = Path(args.output)
        outdir.mkdir(parents=True, exist_ok=True)
        with open(outdir / "evaluation.csv", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(eval_csv_text(reports))
        with open(outdir / "figure_data.csv", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(figure_csv_text(series))
        if not args.quiet:
            print(f"wrote {outdir / 'evaluation.csv'} and {outdir / 'figure_data.csv'}",
                  file=sys.stderr)
    else:
        sys.stdout.write(eval_csv_text(reports))
    return EXIT_OK


def _cmd_pipeline(args) -> int:
    config = load_config(args.config)
    if args.stamp:
        config = dataclasses.replace(config, stamp=True)
    log = None if args.quiet else (lambda msg: print(msg, file=sys.stderr))
    run = run_pipeline(config, log=log)
    if not args.quiet:
        print(f"pipeline complete: {run.output_dir} "
              f"({run.sir_computed} SIR table(s) computed, {run.sir_cached} cached)",
              file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spreadrank",
                     description="Rank network nodes by expected spreading "
                                 "influence under the SIR model.")
    parser.add_argument("--quiet", action="store_true", help="suppress progress output")
    sub = parser.add_subparsers(dest="command", metavar="command",
                                parser_class=_Parser)

    def add_quiet(p):
        # accepted after the subcommand too; SUPPRESS keeps a leading --quiet
        # from being clobbered by the subparser default
        p.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                       help="suppress progress output")

    p_rank = sub.add_parser("rank",
                            help="compute one measure's scores")
    add_quiet(p_rank)
    p_rank.add_argument("--graph", required=True, help="edge-list file")
    p_rank.add_argument("--measure", required=True,
                        help="dc | ec | cc | bc | gc | eve")
    p_rank.add_argument("--beta", type=float, default=None)
    p_rank.add_argument("--gamma", type=float, default=None)
    p_rank.add_argument("--output", default=None, help="write CSV here instead of stdout")
    p_rank.set_defaults(func=_cmd_rank)

    p_sir = sub.add_parser("sir",
                           help="Monte Carlo SIR influence per node")
    add_quiet(p_sir)
    p_sir.add_argument("--graph", required=True)
    p_sir.add_argument("--beta", type=float, required=True)
    p_sir.add_argument("--gamma", type=float, required=True)
    p_sir.add_argument("--runs", type=int, default=1000)
    p_sir.add_argument("--seed", type=int, default=0)
    p_sir.add_argument("--output", default=None)
    p_sir.set_defaults(func=_cmd_sir)

    p_eval = sub.add_parser("eval",
                            help="evaluate measures against a SIR CSV")
    add_quiet(p_eval)
    p_eval.add_argument("--graph", required=True)
    p_eval.add_argument("--sir", required=True, help="SIR ground-truth CSV")
    p_eval.add_argument("--measure", required=True,
                        help="comma-separated list, e.g. dc,ec,eve (sir = sanity row)")
    p_eval.add_argument("--beta", type=float, default=None)
    p_eval.add_argument("--gamma", type=float, default=None)
    p_eval.add_argument("--top-fraction", type=float, default=0.05)
    p_eval.add_argument("--output", default=None,
                        help="directory for evaluation.csv + figure_data.csv")
    p_eval.set_defaults(func=_cmd_eval)

    p_pipe = sub.add_parser("pipeline",
                            help="run a full experiment from a config file")
    add_quiet(p_pipe)
    p_pipe.add_argument("--config", required=True)
    p_pipe.add_argument("--stamp", action="store_true",
                        help="record a wall-clock timestamp in the manifest "
                             "(breaks byte-identical reruns)")
    p_pipe.set_defaults(func=_cmd_pipeline)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphParseError, DataMismatchError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        # invalid probabilities, bad flag combinations surfaced by validation
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (SimulationError, ConvergenceError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
