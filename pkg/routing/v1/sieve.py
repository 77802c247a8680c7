from __future__ import annotations

from argparse import ArgumentParser

from dependencies import get_group_catalog_service
from errors.handlers import EXIT_OK
from routing.v1.common import add_common_arguments, emit
from schemas.elimination import SieveReport
from schemas.run import RunConfig, SieveRunReport
from services.catalog import families
from services.sieve import sieve_catalog, sieve_family
from utils.arith import prime_powers_up_to


def register(subparsers) -> ArgumentParser:
    parser = subparsers.add_parser("sieve", help="arithmetic sieve on the catalog and on PSU_5(q) families")
    add_common_arguments(parser)
    parser.add_argument("--family", type=int, default=None, help="family line 1..11")
    parser.add_argument("--qmax", type=int, default=None)
    parser.set_defaults(handler=run)
    return parser


def render(report: SieveReport) -> str:
    found = ", ".join(str(p) for p in report.survivors) or "none"
    return f"{report.label}: v={report.v} k-bound={report.k_bound} survivors: {found}"


def run(cfg: RunConfig) -> int:
    reports: list[SieveReport] = []
    if cfg.family is None:
        for entry in get_group_catalog_service(cfg).entries():
            reports.extend(sieve_catalog(entry))
    else:
        for q in prime_powers_up_to(cfg.qmax):
            for ctx in families(q, cfg.family):
                if ctx.valid:
                    reports.append(sieve_family(ctx, seed=cfg.seed))
    emit(SieveRunReport(reports=reports), "\n".join(render(r) for r in reports), cfg.json_output, cfg.out)
    return EXIT_OK
