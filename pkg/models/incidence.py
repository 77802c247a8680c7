from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class IncidenceStructure:
    """Points 0..v-1 and a list of blocks, each a sorted tuple of points."""

    v: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for block in self.blocks:
            if list(block) != sorted(set(block)):
                raise ValueError(f"block {block} is not a sorted set")
            if block and not 0 <= block[0] <= block[-1] < self.v:
                raise ValueError(f"block {block} leaves the point range 0..{self.v - 1}")

    @classmethod
    def from_blocks(cls, v: int, blocks: Iterable[Iterable[int]]) -> "IncidenceStructure":
        return cls(v, tuple(tuple(sorted(set(block))) for block in blocks))

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def block_sizes(self) -> set[int]:
        return {len(block) for block in self.blocks}

    def block_sets(self) -> list[frozenset[int]]:
        return [frozenset(block) for block in self.blocks]

    def replication(self) -> list[int]:
        counts = [0] * self.v
        for block in self.blocks:
            for point in block:
                counts[point] += 1
        return counts
