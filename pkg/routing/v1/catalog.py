from __future__ import annotations

from argparse import ArgumentParser

from loguru import logger

from dependencies import get_group_catalog_service
from errors.handlers import EXIT_OK
from routing.v1.common import add_common_arguments, emit
from schemas.run import CatalogRecordStatus, CatalogReport, RunConfig
from services.permgroup import order


def register(subparsers) -> ArgumentParser:
    parser = subparsers.add_parser("catalog", help="build or verify the permutation group catalog")
    add_common_arguments(parser)
    parser.add_argument("--regenerate", action="store_true", help="rewrite every generator file")
    parser.set_defaults(handler=run)
    return parser


def run(cfg: RunConfig) -> int:
    service = get_group_catalog_service(cfg)
    entries = service.entries()
    written = []
    if cfg.regenerate or any(not (cfg.data_dir / e.generator_file).is_file() for e in entries):
        logger.info("Catalog - regenerating {} records in {}", len(entries), cfg.data_dir)
        written = service.regenerate_catalog(entries)
    records = []
    for entry in entries:
        group = service.load_group(entry)
        records.append(
            CatalogRecordStatus(
                record=entry.record_name,
                degree=group.degree,
                order=order(group),
                stabilizer_order=entry.stabilizer_descriptions[0].order,
                generator_file=entry.generator_file,
            )
        )
    report = CatalogReport(records=records, written=written)
    lines = [
        f"{r.record:<28} degree {r.degree:>3}  order {r.order:>6}  stabilizer {r.stabilizer_order:>4}  ok"
        for r in records
    ]
    emit(report, "\n".join(lines), cfg.json_output, cfg.out)
    return EXIT_OK
