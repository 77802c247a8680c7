from __future__ import annotations

from pydantic import BaseModel, ConfigDict, PositiveInt, model_validator


class DesignParams(BaseModel):
    """A candidate (v, k, lambda); construction does not check the design identities."""

    v: PositiveInt
    k: PositiveInt
    lam: PositiveInt

    model_config = ConfigDict(frozen=True)

    @property
    def complement(self) -> "DesignParams":
        return DesignParams(v=self.v, k=self.v - self.k, lam=self.v - 2 * self.k + self.lam)

    def as_tuple(self) -> tuple[int, int, int]:
        return self.v, self.k, self.lam

    def __str__(self) -> str:
        return f"({self.v},{self.k},{self.lam})"


class DesignCertificate(BaseModel):
    name: str
    params: DesignParams
    group_name: str
    group_order: PositiveInt
    flag_transitive: bool
    point_primitive: bool
    stabilizer_order: PositiveInt
    block_stabilizer_helper: str
    fingerprint: str

    @model_validator(mode="after")
    def _check_flag_count(self) -> "DesignCertificate":
        flags = self.params.v * self.params.k
        if self.flag_transitive and self.group_order % flags:
            raise ValueError(
                f"flag-transitive group of order {self.group_order} cannot act on {flags} flags"
            )
        return self


class IsomorphismClass(BaseModel):
    params: DesignParams
    members: list[str]
    witnesses: dict[str, list[int]] = {}
    reference: str | None = None
