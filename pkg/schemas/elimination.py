from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, Field

from schemas.catalog import CatalogEntry, FamilyContext
from schemas.design import DesignParams


class FailureReason(str, Enum):
    NON_INTEGRAL_LAMBDA = "non-integral lambda"
    DIVISIBILITY_FAILURE = "divisibility failure"
    INEQUALITY_VIOLATION = "inequality violation"
    NO_VALID_K = "no valid k"
    EMPTY_TABLE_ROW = "empty table row"


class DegreeDomination(BaseModel):
    """Degrees (in q, or q0) of the two sides of the lemma's final inequality."""

    lhs_degree: int
    rhs_degree: int

    @property
    def dominated(self) -> bool:
        return self.lhs_degree > self.rhs_degree


class EliminationTrace(BaseModel):
    lemma_id: int = Field(..., ge=1, le=9)
    family_line: int = Field(..., ge=1, le=11)
    q: int
    q0: int | None = None
    r: int | None = None
    v: int
    k_bound: int | None = None
    m_values_tested: tuple[int, int] | None = None
    forced_values: list[tuple[str, int | str]] = Field(default_factory=list)
    polynomial_values: list[tuple[str, int]] = Field(default_factory=list)
    failure_reason: FailureReason
    degree_domination: DegreeDomination | None = None
    printed_row: dict[str, int] | None = None
    notes: list[str] = Field(default_factory=list)
    survivors: list[DesignParams] = Field(default_factory=list)

    @property
    def key(self) -> tuple[int, int, int]:
        return self.lemma_id, self.q, self.r or 0


class SieveReport(BaseModel):
    context: FamilyContext | CatalogEntry | None = None
    label: str = ""
    v: int
    k_bound: int
    survivors: list[DesignParams] = Field(default_factory=list)
    checks_applied: list[str] = Field(default_factory=list)


class CellResult(BaseModel):
    """A lemma trace next to the oracle's independent verdict for the same cell."""

    family_line: int
    q: int
    r: int | None = None
    valid: bool
    trace: EliminationTrace | None = None
    oracle: SieveReport | None = None
    error: str | None = None

    @property
    def key(self) -> tuple[int, int, int]:
        return self.family_line, self.q, self.r or 0

    @property
    def agree(self) -> bool:
        if self.trace is None or self.oracle is None:
            return self.trace is None and self.oracle is None
        return sorted(p.as_tuple() for p in self.trace.survivors) == sorted(
            p.as_tuple() for p in self.oracle.survivors
        )

    @property
    def has_survivor(self) -> bool:
        return bool(
            (self.trace and self.trace.survivors)
            or (self.oracle and self.oracle.survivors)
        )
