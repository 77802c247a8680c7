from collections.abc import Callable

from loguru import logger

from errors.errors import (
    ErrBadRequest,
    ErrEntityNotFound,
    ErrFormat,
    ErrGeneration,
    ErrInvalidFamily,
    ErrNotSubgroup,
    ErrResourceGuard,
    ErrSubgroupNotFound,
    ErrVerification,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_SURVIVOR = 2

Handler = Callable[[Exception], int]


def entity_not_found_exception_handler(e: ErrEntityNotFound) -> int:
    logger.error(f"not found: {e}")
    return EXIT_ERROR


def bad_request_exception_handler(e: ErrBadRequest) -> int:
    logger.error(f"bad request: {e}")
    return EXIT_ERROR


def invalid_family_exception_handler(e: ErrInvalidFamily) -> int:
    logger.error(f"invalid family: {e}")
    return EXIT_ERROR


def resource_guard_exception_handler(e: ErrResourceGuard) -> int:
    logger.error(f"resource guard: {e}")
    return EXIT_ERROR


def format_exception_handler(e: ErrFormat) -> int:
    logger.error(f"format error: {e}")
    return EXIT_ERROR


def verification_exception_handler(e: ErrVerification) -> int:
    logger.error(f"verification failed: {e} (witness = {e.witness})")
    return EXIT_ERROR


def generation_exception_handler(e: ErrGeneration) -> int:
    logger.error(f"generation failed: {e} (achieved order = {e.achieved_order})")
    return EXIT_ERROR


def group_exception_handler(e: Exception) -> int:
    logger.error(f"group computation failed: {e}")
    return EXIT_ERROR


def internal_exception_handler(e: Exception) -> int:
    logger.opt(exception=e).error(f"Unhandled error: {e}")
    return EXIT_ERROR


_HANDLERS: list[tuple[type[Exception], Handler]] = []


def add_exception_handler(exc_type: type[Exception], handler: Handler) -> None:
    _HANDLERS.append((exc_type, handler))


def init_exception_handlers() -> None:
    _HANDLERS.clear()

    add_exception_handler(ErrEntityNotFound, entity_not_found_exception_handler)

    add_exception_handler(ErrBadRequest, bad_request_exception_handler)

    add_exception_handler(ErrInvalidFamily, invalid_family_exception_handler)

    add_exception_handler(ErrResourceGuard, resource_guard_exception_handler)

    add_exception_handler(ErrFormat, format_exception_handler)

    add_exception_handler(ErrVerification, verification_exception_handler)

    add_exception_handler(ErrGeneration, generation_exception_handler)

    add_exception_handler(ErrNotSubgroup, group_exception_handler)

    add_exception_handler(ErrSubgroupNotFound, group_exception_handler)

    add_exception_handler(Exception, internal_exception_handler)


def handle_exception(e: Exception) -> int:
    if not _HANDLERS:
        init_exception_handlers()
    for exc_type, handler in _HANDLERS:
        if isinstance(e, exc_type):
            return handler(e)
    return internal_exception_handler(e)
