from __future__ import annotations

from functools import partial

import anyio
from anyio import to_process
from loguru import logger

from schemas.elimination import CellResult
from schemas.run import EliminationReport
from services.elimination import LINE_TO_LEMMA, cell_keys, eliminate_sporadic, run_cell


def _order(cell: CellResult) -> tuple[int, int, int, int]:
    return LINE_TO_LEMMA[cell.family_line], cell.q, cell.r or 0, cell.family_line


class EliminationService:
    """Runs every (family, q) cell, in worker processes when `workers` > 1."""

    def __init__(self, workers: int = 1, seed: int = 0, divisor_limit: int | None = None) -> None:
        self._workers = workers
        self._seed = seed
        self._divisor_limit = divisor_limit

    def _job(self, key: tuple[int, int, int | None]):
        line, q, r = key
        return partial(run_cell, line, q, r, seed=self._seed, divisor_limit=self._divisor_limit)

    async def _fan_out(self, keys: list[tuple[int, int, int | None]]) -> list[CellResult]:
        limiter = anyio.CapacityLimiter(self._workers)
        results: list[CellResult] = []

        async def worker(key: tuple[int, int, int | None]) -> None:
            results.append(await to_process.run_sync(self._job(key), limiter=limiter))

        async with anyio.create_task_group() as tg:
            for key in keys:
                tg.start_soon(worker, key)
        return results

    def run(self, qmax: int, family: int | None = None) -> EliminationReport:
        keys = cell_keys(qmax, family)
        logger.info("Elimination - Service - {} cells, {} workers", len(keys), self._workers)
        if self._workers == 1:
            cells = [self._job(key)() for key in keys]
        else:
            cells = anyio.run(self._fan_out, keys)
        sporadic = eliminate_sporadic() if family is None or family >= 9 else []
        if family is not None:
            sporadic = [t for t in sporadic if t.family_line == family]
        return EliminationReport(
            qmax=qmax,
            family=family,
            cells=sorted(cells, key=_order),
            sporadic=sporadic,
        )
