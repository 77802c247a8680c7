from __future__ import annotations

from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, PositiveInt


class FamilyContext(BaseModel):
    """One (family line, q) cell for socle PSU_5(q)."""

    family_line: int = Field(..., ge=1, le=11)
    q: PositiveInt
    p: PositiveInt
    a: PositiveInt
    socle_order: PositiveInt
    out_order: PositiveInt
    v: PositiveInt | None = None
    h0_order: PositiveInt | None = None
    k_bound: PositiveInt | None = None
    k_bound_factors: list[PositiveInt] = Field(default_factory=list)
    printed_k_bound: PositiveInt | None = None
    subdegree_divisors: list[PositiveInt] = Field(default_factory=list)
    is_parabolic: bool = False
    valid: bool
    condition: str = ""
    q0: PositiveInt | None = None
    r: PositiveInt | None = None
    note: str | None = None

    model_config = ConfigDict(frozen=True)

    @property
    def key(self) -> tuple[int, int, int]:
        return self.family_line, self.q, self.r or 0


class StabilizerDescription(BaseModel):
    name: str
    order: PositiveInt
    expected_v: PositiveInt


class CatalogEntry(BaseModel):
    group_name: str
    degree: PositiveInt
    generator_file: Path
    expected_order: PositiveInt
    stabilizer_descriptions: list[StabilizerDescription]

    @property
    def record_name(self) -> str:
        return f"{self.group_name}/{self.stabilizer_descriptions[0].name}"
