from __future__ import annotations

from argparse import ArgumentParser
from itertools import groupby
from pathlib import Path

from errors.errors import ErrEntityNotFound, ErrFormat
from errors.handlers import EXIT_ERROR, EXIT_OK, EXIT_SURVIVOR
from schemas.elimination import CellResult, EliminationTrace
from schemas.run import EliminationReport, RunConfig
from services.elimination import LINE_TO_LEMMA


def register(subparsers) -> ArgumentParser:
    parser = subparsers.add_parser("report", help="render a saved JSON elimination report")
    parser.add_argument("report", type=Path, help="JSON written by `eliminate --out`")
    parser.set_defaults(handler=run)
    return parser


def _survivors(trace: EliminationTrace | None) -> str:
    if trace is None:
        return "[]"
    return "[" + ", ".join(str(p) for p in trace.survivors) + "]"


def _cell_line(cell: CellResult) -> str:
    label = f"line {cell.family_line} q={cell.q}" + (f" r={cell.r}" if cell.r else "")
    if cell.error:
        return f"  {label}: ERROR {cell.error}"
    trace = cell.trace
    oracle = "[" + ", ".join(str(p) for p in cell.oracle.survivors) + "]" if cell.oracle else "-"
    reason = trace.failure_reason.value if trace.failure_reason else "-"
    return (
        f"  {label}: v={trace.v} k-bound={trace.k_bound} survivors: {_survivors(trace)} "
        f"oracle: {oracle} reason: {reason}" + ("" if cell.agree else " DISAGREE")
    )


def render(report: EliminationReport) -> str:
    lines = [f"elimination qmax={report.qmax}" + (f" family={report.family}" if report.family else "")]
    for lemma, cells in groupby(report.cells, key=lambda c: LINE_TO_LEMMA[c.family_line]):
        lines.append(f"lemma {lemma}")
        for cell in cells:
            if cell.valid:
                lines.append(_cell_line(cell))
                if cell.trace:
                    lines.extend(f"    {note}" for note in cell.trace.notes)
    if report.sporadic:
        lines.append("printed large-subgroup rows")
        for trace in report.sporadic:
            printed = trace.printed_row or {}
            lines.append(
                f"  line {trace.family_line} q={trace.q}: v={trace.v} printed k-bound="
                f"{printed.get('k_divides', '-')} survivors: {_survivors(trace)}"
            )
    verdict = "survivors found" if report.any_survivor else "no survivors"
    lines.append(f"{verdict}; lemma and oracle {'agree' if report.consistent else 'DISAGREE'}")
    return "\n".join(lines)


def exit_code(report: EliminationReport) -> int:
    if report.any_survivor:
        return EXIT_SURVIVOR
    if not report.consistent or any(c.error for c in report.cells):
        return EXIT_ERROR
    return EXIT_OK


def run(cfg: RunConfig) -> int:
    if cfg.report is None or not cfg.report.is_file():
        raise ErrEntityNotFound(f"report file {cfg.report} not found")
    try:
        report = EliminationReport.model_validate_json(cfg.report.read_text(encoding="utf-8"))
    except ValueError as e:
        raise ErrFormat(f"{cfg.report} is not an elimination report: {e}") from e
    print(render(report))
    return exit_code(report)
