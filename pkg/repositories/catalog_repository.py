from __future__ import annotations

from pathlib import Path

from loguru import logger

from errors.errors import ErrEntityNotFound, ErrFormat
from schemas.catalog import CatalogEntry, StabilizerDescription

CATALOG_FILE = "catalog.txt"
HEADER = "# name degree order file stab_order expected_v"


class CatalogRepository:
    def __init__(self, data_dir: Path):
        self._data_dir = Path(data_dir)

    @property
    def path(self) -> Path:
        return self._data_dir / CATALOG_FILE

    def load(self) -> list[CatalogEntry]:
        if not self.path.is_file():
            raise ErrEntityNotFound(f"catalog file {self.path} not found")
        return self.parse(self.path.read_text(encoding="utf-8"))

    @staticmethod
    def parse(text: str) -> list[CatalogEntry]:
        entries = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) != 6:
                raise ErrFormat(f"expected 6 fields, got {len(fields)}", number)
            name, degree, order, filename, stab_order, expected_v = fields
            if "/" not in name:
                raise ErrFormat(f"record name {name!r} lacks 'group/stabilizer'", number)
            group, stabilizer = name.split("/", 1)
            try:
                entry = CatalogEntry(
                    group_name=group,
                    degree=int(degree),
                    generator_file=Path(filename),
                    expected_order=int(order),
                    stabilizer_descriptions=[
                        StabilizerDescription(
                            name=stabilizer, order=int(stab_order), expected_v=int(expected_v)
                        )
                    ],
                )
            except ValueError as e:
                raise ErrFormat(f"bad numeric field in {line!r}", number) from e
            if entry.expected_order != entry.stabilizer_descriptions[0].order * entry.degree:
                raise ErrFormat("order != stab_order * degree", number)
            entries.append(entry)
        return entries

    @staticmethod
    def render(entries: list[CatalogEntry]) -> str:
        lines = [HEADER]
        for entry in entries:
            stab = entry.stabilizer_descriptions[0]
            lines.append(
                f"{entry.record_name} {entry.degree} {entry.expected_order} "
                f"{entry.generator_file.as_posix()} {stab.order} {stab.expected_v}"
            )
        return "\n".join(lines) + "\n"

    def save(self, entries: list[CatalogEntry]) -> Path:
        self._data_dir.mkdir(parents=True, exist_ok=True)
        self.path.write_text(self.render(entries), encoding="utf-8")
        logger.debug("Catalog - Repository - wrote {} records to {}", len(entries), self.path)
        return self.path
