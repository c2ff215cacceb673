"""Command-line front end: validate, recode, rules, tree, eval.

Every run emits a self-contained report carrying the tool version, the
full effective configuration and a dataset fingerprint (row count plus
sha256), so a report is reproducible from its own header.  Exit codes:
0 success, 1 usage, 2 data/schema problem, 3 parameter out of range.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__
from .assoc import frequent_itemsets, generate_rules, itemize
from .evaluate import cross_validate
from .ingest import COLUMN_NAMES, DatasetError, file_sha256, load_csv, validate_schema
from .recode import ANALYSES, TARGET_COLUMN, project_analysis, recode_table
from .reptree import TreeParams, fit, render_tree

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_PARAMETER = 3

DEFAULT_MIN_SUPPORT = 0.05
DEFAULT_MIN_CONFIDENCE = 0.9
DEFAULT_FOLDS = 10
DEFAULT_SEED = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems instead of exiting with 2."""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="evalmine", description=__doc__)
    parser.add_argument("--version", action="version", version=f"evalmine {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add_common(p, analysis=None, fmt=True):
        p.add_argument("--input", required=True, help="path to the evaluation CSV")
        if analysis == "optional":
            p.add_argument("--analysis", choices=ANALYSES, default="course-instructor")
        elif analysis == "required":
            p.add_argument("--analysis", choices=ANALYSES, required=True)
        p.add_argument("--out", help="write output here instead of stdout")
        if fmt:
            p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("validate", help="load the CSV and report per-column ranges")
    add_common(p)

    p = sub.add_parser("recode", help="emit the recoded table as CSV")
    add_common(p, fmt=False)

    p = sub.add_parser("rules", help="mine class association rules")
    add_common(p, analysis="optional")
    p.add_argument("--min-support", type=float, default=DEFAULT_MIN_SUPPORT)
    p.add_argument("--min-confidence", type=float, default=DEFAULT_MIN_CONFIDENCE)

    p = sub.add_parser("tree", help="fit and print a pruned decision tree")
    add_common(p, analysis="required")
    _add_tree_flags(p)

    p = sub.add_parser("eval", help="stratified cross-validation metrics")
    add_common(p, analysis="required")
    p.add_argument("--folds", type=int, default=DEFAULT_FOLDS)
    _add_tree_flags(p)

    return parser


def _add_tree_flags(p) -> None:
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--min-leaf", type=int, default=2)
    p.add_argument("--prune-folds", type=int, default=3)


def run(argv=None) -> int:
    """Execute one subcommand; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"evalmine: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        output = _dispatch(args)
    except UsageError as exc:
        print(f"evalmine: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DatasetError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"evalmine: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"evalmine: parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER

    _emit(output, getattr(args, "out", None))
    return EXIT_OK


def main() -> None:
    sys.exit(run())


def _dispatch(args) -> str:
    table = load_csv(args.input)
    fingerprint = {
        "path": str(args.input),
        "sha256": file_sha256(args.input),
        "rows": table.n_rows,
        "columns": len(table.schema),
    }
    if args.command == "validate":
        return _cmd_validate(args, table, fingerprint)
    if args.command == "recode":
        return _cmd_recode(args, table)
    if args.command == "rules":
        return _cmd_rules(args, table, fingerprint)
    if args.command == "tree":
        return _cmd_tree(args, table, fingerprint)
    if args.command == "eval":
        return _cmd_eval(args, table, fingerprint)
    raise UsageError(f"unknown command {args.command!r}")


def _report(args, fingerprint, config: dict, payload: dict) -> dict:
    return {
        "tool": {"name": "evalmine", "version": __version__},
        "command": args.command,
        "config": config,
        "dataset": fingerprint,
        "payload": payload,
    }


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _to_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def _cmd_validate(args, table, fingerprint) -> str:
    summary = validate_schema(table)
    config = {"input": str(args.input), "format": args.format}
    columns = [
        {
            "name": c.name,
            "min": c.observed_min,
            "max": c.observed_max,
            "distinct": c.distinct,
            "in_range": c.in_range,
        }
        for c in summary.columns
    ]
    payload = {"rows": summary.n_rows, "all_in_range": summary.all_in_range,
               "columns": columns}
    report = _report(args, fingerprint, config, payload)
    if args.format == "structured":
        return _to_json(report)
    lines = [
        f"rows: {summary.n_rows}",
        f"sha256: {fingerprint['sha256']}",
        f"all columns in range: {'yes' if summary.all_in_range else 'NO'}",
    ]
    for c in summary.columns:
        flag = "" if c.in_range else "  <-- out of range"
        lines.append(
            f"  {c.name}: min={c.observed_min} max={c.observed_max} "
            f"distinct={c.distinct}{flag}"
        )
    return "\n".join(lines) + "\n"


def _cmd_recode(args, table) -> str:
    recoded = recode_table(table)
    buf = []
    writer_target = _ListWriter(buf)
    writer = csv.writer(writer_target, lineterminator="\n")
    writer.writerow(COLUMN_NAMES)
    for r in range(recoded.n_rows):
        writer.writerow(recoded.row_tokens(r))
    return "".join(buf)


class _ListWriter:
    def __init__(self, sink: list):
        self.sink = sink

    def write(self, text: str):
        self.sink.append(text)


def _cmd_rules(args, table, fingerprint) -> str:
    recoded = project_analysis(recode_table(table), args.analysis)
    transactions = itemize(recoded)
    frequent = frequent_itemsets(transactions, args.min_support)
    rules = generate_rules(frequent, args.min_confidence,
                           consequent_filter=TARGET_COLUMN)
    config = {
        "input": str(args.input),
        "analysis": args.analysis,
        "min_support": args.min_support,
        "min_confidence": args.min_confidence,
        "consequent_filter": TARGET_COLUMN,
        "format": args.format,
    }
    payload = {
        "n_frequent_itemsets": len(frequent),
        "n_rules": len(rules),
        "rules": [
            {
                "antecedent": [str(i) for i in r.antecedent],
                "consequent": [str(i) for i in r.consequent],
                "support": round(r.support, 4),
                "confidence": round(r.confidence, 4),
                "lift": round(r.lift, 4),
                "count_rule": r.count_rule,
                "count_antecedent": r.count_antecedent,
                "count_consequent": r.count_consequent,
                "total": r.total,
            }
            for r in rules
        ],
    }
    report = _report(args, fingerprint, config, payload)
    if args.format == "structured":
        return _to_json(report)
    lines = [
        f"analysis: {args.analysis}",
        f"min_support={args.min_support}  min_confidence={args.min_confidence}",
        f"{len(rules)} rule(s)",
        "",
    ]
    lines += [f"{i}. {rule}" for i, rule in enumerate(rules, start=1)]
    return "\n".join(lines) + "\n"


def _tree_params(args) -> TreeParams:
    return TreeParams(min_leaf=args.min_leaf, prune_folds=args.prune_folds,
                      seed=args.seed)


def _cmd_tree(args, table, fingerprint) -> str:
    recoded = project_analysis(recode_table(table), args.analysis)
    params = _tree_params(args)
    tree = fit(recoded, params)
    rendering = render_tree(tree)
    config = {
        "input": str(args.input),
        "analysis": args.analysis,
        "seed": params.seed,
        "min_leaf": params.min_leaf,
        "prune_folds": params.prune_folds,
        "format": args.format,
    }
    payload = {"rendering": rendering}
    report = _report(args, fingerprint, config, payload)
    if args.format == "structured":
        return _to_json(report)
    echo = (f"seed = {params.seed}\nprune_folds = {params.prune_folds}\n"
            f"min_leaf = {params.min_leaf}")
    return f"{rendering}\n\n{echo}\n"


def _cmd_eval(args, table, fingerprint) -> str:
    recoded = project_analysis(recode_table(table), args.analysis)
    params = _tree_params(args)
    report_data = cross_validate(recoded, params, k=args.folds, seed=args.seed,
                                 analysis=args.analysis)
    m = report_data.metrics
    config = {
        "input": str(args.input),
        "analysis": args.analysis,
        "folds": args.folds,
        "seed": args.seed,
        "min_leaf": params.min_leaf,
        "prune_folds": params.prune_folds,
        "format": args.format,
    }
    payload = {
        "accuracy": round(m.accuracy, 6),
        "weighted_f": round(m.weighted_f, 6),
        "confusion": [list(row) for row in report_data.confusion],
        "labels": ["No", "Yes"],
        "precision": {"No": round(m.precision[0], 6), "Yes": round(m.precision[1], 6)},
        "recall": {"No": round(m.recall[0], 6), "Yes": round(m.recall[1], 6)},
        "f1": {"No": round(m.f1[0], 6), "Yes": round(m.f1[1], 6)},
        "seed": args.seed,
    }
    report = _report(args, fingerprint, config, payload)
    if args.format == "structured":
        return _to_json(report)
    cm = report_data.confusion
    lines = [
        f"Correctly Classified Instances    {m.accuracy * 100:.4f} %",
        f"Avg. F-Measure                    {m.weighted_f:.3f}",
        "",
        "confusion matrix (rows = actual, cols = predicted; No, Yes):",
        f"  {cm[0][0]:6d} {cm[0][1]:6d}",
        f"  {cm[1][0]:6d} {cm[1][1]:6d}",
        "",
        f"precision No={m.precision[0]:.4f} Yes={m.precision[1]:.4f}",
        f"recall    No={m.recall[0]:.4f} Yes={m.recall[1]:.4f}",
        f"F1        No={m.f1[0]:.4f} Yes={m.f1[1]:.4f}",
        "",
        f"analysis = {args.analysis}",
        f"folds = {args.folds}",
        f"seed = {args.seed}",
        f"min_leaf = {params.min_leaf}",
        f"prune_folds = {params.prune_folds}",
    ]
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    main()
