from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0..degree-1}; `images[i]` is the image of i.

    Points are 0-based in memory. Generator files use 1-based images and
    convert at the repository boundary.
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("images do not form a permutation")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        for cycle in cycles:
            for i, point in enumerate(cycle):
                images[point] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    @classmethod
    def from_one_based(cls, images: Iterable[int]) -> "Permutation":
        return cls(tuple(i - 1 for i in images))

    def to_one_based(self) -> list[int]:
        return [i + 1 for i in self.images]

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # self first, then other
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, image in enumerate(self.images):
            inv[image] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == image for i, image in enumerate(self.images))

    def cycle_lengths(self) -> list[int]:
        seen = [False] * len(self.images)
        lengths = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            length = 0
            point = start
            while not seen[point]:
                seen[point] = True
                point = self.images[point]
                length += 1
            lengths.append(length)
        return lengths

    def order(self) -> int:
        return math.lcm(*self.cycle_lengths()) if self.images else 1


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Permutation, ...]
    name: str = ""
    cached_order: int | None = field(default=None, compare=False)
    chain: Any = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError("degree must be positive")
        for gen in self.generators:
            if gen.degree != self.degree:
                raise ValueError(
                    f"generator of degree {gen.degree} in a group of degree {self.degree}"
                )

    @classmethod
    def trivial(cls, degree: int, name: str = "1") -> "PermGroup":
        return cls(degree=degree, generators=(Permutation.identity(degree),), name=name)

    @property
    def nontrivial_generators(self) -> tuple[Permutation, ...]:
        return tuple(g for g in self.generators if not g.is_identity())

    def attach_chain(self, chain: Any, order: int) -> None:
        object.__setattr__(self, "chain", chain)
        object.__setattr__(self, "cached_order", order)

    def with_name(self, name: str) -> "PermGroup":
        group = PermGroup(self.degree, self.generators, name)
        if self.chain is not None:
            group.attach_chain(self.chain, self.cached_order)
        return group


@dataclass(frozen=True)
class ActionHomomorphism:
    """Images of `source.generators`, in order, acting on `target_degree` points.

    `points` optionally labels each target point (a coset representative, a
    point of an invariant subset, a frame).
    """

    source: PermGroup
    target_degree: int
    generator_images: tuple[Permutation, ...]
    points: tuple[Any, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.generator_images) != len(self.source.generators):
            raise ValueError("one image per source generator is required")

    @property
    def image(self) -> PermGroup:
        return PermGroup(
            degree=self.target_degree,
            generators=self.generator_images,
            name=self.source.name,
        )
