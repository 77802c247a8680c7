from __future__ import annotations

from argparse import ArgumentParser
from pathlib import Path

from dependencies import get_elimination_service
from routing.v1.common import add_common_arguments, emit
from routing.v1.report import exit_code, render
from schemas.run import RunConfig


def register(subparsers) -> ArgumentParser:
    parser = subparsers.add_parser("eliminate", help="run every PSU_5(q) family case up to qmax")
    add_common_arguments(parser)
    parser.add_argument("--qmax", type=int, default=None)
    parser.add_argument("--family", type=int, default=None, help="family line 1..11")
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--out", type=Path, default=None, help="write the JSON report here")
    parser.set_defaults(handler=run)
    return parser


def run(cfg: RunConfig) -> int:
    report = get_elimination_service(cfg).run(cfg.qmax, cfg.family)
    emit(report, render(report), cfg.json_output, cfg.out)
    return exit_code(report)
