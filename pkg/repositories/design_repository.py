from __future__ import annotations

from pathlib import Path

from loguru import logger

from errors.errors import ErrEntityNotFound, ErrFormat
from models.incidence import IncidenceStructure
from schemas.design import DesignParams


class DesignRepository:
    """Design files: `v k lambda`, then v lines of k sorted 1-based points."""

    def __init__(self, out_dir: Path):
        self._out_dir = Path(out_dir)

    def path(self, name: Path | str) -> Path:
        path = Path(name)
        return path if path.is_absolute() else self._out_dir / path

    def load(self, name: Path | str) -> tuple[DesignParams, IncidenceStructure]:
        path = self.path(name)
        if not path.is_file():
            raise ErrEntityNotFound(f"design file {path} not found")
        return self.parse(path.read_text(encoding="utf-8"))

    @staticmethod
    def parse(text: str) -> tuple[DesignParams, IncidenceStructure]:
        lines = [
            (number, line.strip())
            for number, line in enumerate(text.splitlines(), start=1)
            if line.strip() and not line.lstrip().startswith("#")
        ]
        if not lines:
            raise ErrFormat("empty design file", 1)
        number, header = lines[0]
        try:
            v, k, lam = (int(token) for token in header.split())
        except ValueError as e:
            raise ErrFormat(f"expected 'v k lambda', got {header!r}", number) from e
        if min(v, k, lam) < 1:
            raise ErrFormat("parameters must be positive", number)
        body = lines[1:]
        if len(body) != v:
            last = body[-1][0] if body else number
            raise ErrFormat(f"{len(body)} blocks, expected {v}", last)
        blocks = []
        for number, line in body:
            try:
                points = [int(token) for token in line.split()]
            except ValueError as e:
                raise ErrFormat(f"non-integer point in {line!r}", number) from e
            if len(points) != k:
                raise ErrFormat(f"block of size {len(points)}, expected {k}", number)
            if points != sorted(set(points)):
                raise ErrFormat("block points must be sorted and distinct", number)
            if points[0] < 1 or points[-1] > v:
                raise ErrFormat(f"point outside 1..{v}", number)
            blocks.append(tuple(p - 1 for p in points))
        return DesignParams(v=v, k=k, lam=lam), IncidenceStructure(v, tuple(blocks))

    @staticmethod
    def render(params: DesignParams, design: IncidenceStructure) -> str:
        lines = [f"{params.v} {params.k} {params.lam}"]
        lines += [" ".join(str(p + 1) for p in block) for block in design.blocks]
        return "\n".join(lines) + "\n"

    def save(self, name: Path | str, params: DesignParams, design: IncidenceStructure) -> Path:
        path = self.path(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(params, design), encoding="utf-8")
        logger.debug("{} - Repository - wrote design {} to {}", name, params, path)
        return path

    def save_json(self, name: Path | str, payload: str) -> Path:
        path = self.path(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(payload, encoding="utf-8")
        return path
