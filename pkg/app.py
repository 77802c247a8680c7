import argparse
import sys

from loguru import logger
from pydantic import ValidationError

from configs.Environment import get_environment_variables
from errors.errors import ErrBadRequest
from errors.handlers import handle_exception, init_exception_handlers
from routing.v1 import register_commands
from schemas.run import RunConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unitary-designs",
        description="Flag-transitive symmetric designs with socle PSU_n(q), n <= 5",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    register_commands(subparsers)
    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    env = get_environment_variables()
    values = {k: v for k, v in vars(args).items() if k in RunConfig.model_fields and v is not None}
    values.setdefault("qmax", env.QMAX)
    values.setdefault("seed", env.SEED)
    values.setdefault("workers", env.WORKERS)
    values.setdefault("data_dir", env.DATA_DIR)
    try:
        return RunConfig(**values)
    except ValidationError as e:
        raise ErrBadRequest(str(e)) from e


def main(argv: list[str] | None = None) -> int:
    env = get_environment_variables()
    if not env.DEBUG:
        logger.remove()
        logger.add(sys.stderr, level="INFO")

    init_exception_handlers()

    args = build_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        return args.handler(cfg)
    except Exception as e:
        return handle_exception(e)


if __name__ == "__main__":
    sys.exit(main())
