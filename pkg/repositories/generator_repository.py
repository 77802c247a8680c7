from __future__ import annotations

from pathlib import Path

from loguru import logger

from errors.errors import ErrEntityNotFound, ErrFormat
from models.permutation import PermGroup, Permutation


def _content_lines(text: str) -> list[tuple[int, str]]:
    return [
        (number, line.strip())
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]


class GeneratorRepository:
    """Permutation generator files: `degree n`, then one generator per line as 1-based images."""

    def __init__(self, data_dir: Path):
        self._data_dir = Path(data_dir)

    def path(self, name: Path | str) -> Path:
        path = Path(name)
        return path if path.is_absolute() else self._data_dir / path

    def exists(self, name: Path | str) -> bool:
        return self.path(name).is_file()

    def load(self, name: Path | str, group_name: str = "") -> PermGroup:
        path = self.path(name)
        if not path.is_file():
            raise ErrEntityNotFound(f"generator file {path} not found")
        return self.parse(path.read_text(encoding="utf-8"), group_name)

    @staticmethod
    def parse(text: str, group_name: str = "") -> PermGroup:
        lines = _content_lines(text)
        if not lines:
            raise ErrFormat("empty generator file", 1)
        number, header = lines[0]
        fields = header.split()
        if len(fields) != 2 or fields[0] != "degree" or not fields[1].isdigit():
            raise ErrFormat(f"expected 'degree n', got {header!r}", number)
        degree = int(fields[1])
        if degree < 1:
            raise ErrFormat("degree must be positive", number)
        generators = []
        for number, line in lines[1:]:
            try:
                images = [int(token) for token in line.split()]
            except ValueError as e:
                raise ErrFormat(f"non-integer image in {line!r}", number) from e
            if len(images) != degree:
                raise ErrFormat(f"{len(images)} images for degree {degree}", number)
            if sorted(images) != list(range(1, degree + 1)):
                raise ErrFormat("images are not a permutation of 1..degree", number)
            generators.append(Permutation.from_one_based(images))
        if not generators:
            raise ErrFormat("no generators", lines[0][0])
        return PermGroup(degree, tuple(generators), group_name)

    @staticmethod
    def render(group: PermGroup) -> str:
        lines = [f"degree {group.degree}"]
        lines += [" ".join(map(str, gen.to_one_based())) for gen in group.generators]
        return "\n".join(lines) + "\n"

    def save(self, name: Path | str, group: PermGroup) -> Path:
        path = self.path(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(group), encoding="utf-8")
        logger.debug("{} - Repository - wrote {} generators to {}", group.name, len(group.generators), path)
        return path
