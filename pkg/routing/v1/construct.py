from __future__ import annotations

from argparse import ArgumentParser
from pathlib import Path

from loguru import logger

from dependencies import get_construction_service, get_design_repository
from repositories.generator_repository import GeneratorRepository
from errors.handlers import EXIT_ERROR, EXIT_OK
from routing.v1.common import add_common_arguments, emit, to_json
from schemas.run import ConstructionReport, RunConfig


def register(subparsers) -> ArgumentParser:
    parser = subparsers.add_parser("construct", help="build and certify the flag-transitive designs")
    add_common_arguments(parser)
    parser.add_argument("--group", default=None, help="e.g. PSU_4(2)")
    parser.add_argument("--v", type=int, default=None, help="number of points")
    parser.add_argument("--out", type=Path, default=None, help="directory for design files")
    parser.set_defaults(handler=run)
    return parser


def render(report: ConstructionReport) -> str:
    lines = []
    for c in report.certificates:
        lines.append(
            f"{c.name}: {c.params} under {c.group_name} (order {c.group_order}) "
            f"flag-transitive={c.flag_transitive} primitive={c.point_primitive} "
            f"point stabilizer {c.stabilizer_order} via {c.block_stabilizer_helper}"
        )
    for number, cls in enumerate(report.classes, start=1):
        suffix = f" ~ {cls.reference}" if cls.reference else ""
        lines.append(f"class {number} {cls.params}: {', '.join(cls.members)}{suffix}")
    lines.append(
        f"lambda set {report.lambda_set}; {len(report.classes)} classes "
        f"(expected {report.expected_classes}); complete={report.complete}"
    )
    return "\n".join(lines)


def run(cfg: RunConfig) -> int:
    report, built = get_construction_service(cfg).run(cfg.group, cfg.v)
    if cfg.out is not None:
        repo = get_design_repository(cfg)
        generators = GeneratorRepository(cfg.out)
        for item in built:
            repo.save(f"{item.name}.txt", item.params, item.design)
            generators.save(f"{item.name}.gens.txt", item.acting)
        repo.save_json("certificates.json", to_json(report))
        logger.info("Construction - {} design files written to {}", len(built), cfg.out)
    emit(report, render(report), cfg.json_output)
    return EXIT_OK if report.complete else EXIT_ERROR
