from __future__ import annotations

from argparse import ArgumentParser
from pathlib import Path

from dependencies import get_generator_repository
from errors.errors import ErrBadRequest, ErrFormat, ErrVerification
from errors.handlers import EXIT_ERROR, EXIT_OK
from repositories.design_repository import DesignRepository
from routing.v1.common import add_common_arguments, emit
from schemas.design import DesignCertificate
from schemas.run import RunConfig
from services import design as designs
from services.permgroup import is_primitive, order, stabilizer


def register(subparsers) -> ArgumentParser:
    parser = subparsers.add_parser("verify", help="check a design file against a generator file")
    add_common_arguments(parser)
    parser.add_argument("--design", type=Path, required=True)
    parser.add_argument("--generators", type=Path, required=True)
    parser.set_defaults(handler=run)
    return parser


def run(cfg: RunConfig) -> int:
    if cfg.design is None or cfg.generators is None:
        raise ErrBadRequest("verify needs --design and --generators")
    params, d = DesignRepository(Path.cwd()).load(cfg.design)
    group = get_generator_repository(cfg).load(cfg.generators, cfg.generators.stem)
    if group.degree != d.v:
        raise ErrFormat(f"generators act on {group.degree} points, design has {d.v}")
    found = designs.verify_symmetric(d)
    if found != params:
        raise ErrVerification(
            f"file declares {params}, blocks give {found}", witness={"declared": params.as_tuple()}
        )
    transitive = designs.flag_transitive(d, group)
    certificate = DesignCertificate(
        name=cfg.design.stem,
        params=found,
        group_name=group.name,
        group_order=order(group),
        flag_transitive=transitive,
        point_primitive=is_primitive(group),
        stabilizer_order=order(stabilizer(group, 0)),
        block_stabilizer_helper="-",
        fingerprint=designs.block_fingerprint(d),
    )
    text = (
        f"{certificate.name}: {found} group order {certificate.group_order} "
        f"flag-transitive={certificate.flag_transitive} primitive={certificate.point_primitive}"
    )
    emit(certificate, text, cfg.json_output, cfg.out)
    return EXIT_OK if certificate.flag_transitive and certificate.point_primitive else EXIT_ERROR
