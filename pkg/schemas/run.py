from __future__ import annotations

from enum import Enum
from pathlib import Path

from pydantic import BaseModel, Field, field_validator

from schemas.design import DesignCertificate, IsomorphismClass
from schemas.elimination import CellResult, EliminationTrace, SieveReport

SCHEMA_VERSION = 1


class Command(str, Enum):
    CATALOG = "catalog"
    SIEVE = "sieve"
    ELIMINATE = "eliminate"
    CONSTRUCT = "construct"
    VERIFY = "verify"
    REPORT = "report"


class RunConfig(BaseModel):
    command: Command
    qmax: int = 64
    family: int | None = None
    seed: int = 0
    json_output: bool = False
    workers: int = 1
    data_dir: Path = Path("data")
    out: Path | None = None
    group: str | None = None
    v: int | None = None
    design: Path | None = None
    generators: Path | None = None
    report: Path | None = None
    regenerate: bool = False

    @field_validator("qmax")
    @classmethod
    def _validate_qmax(cls, value: int) -> int:
        if value < 2:
            raise ValueError("qmax must be at least 2")
        return value

    @field_validator("family")
    @classmethod
    def _validate_family(cls, value: int | None) -> int | None:
        if value is not None and not 1 <= value <= 11:
            raise ValueError("family must lie in 1..11")
        return value

    @field_validator("seed")
    @classmethod
    def _validate_seed(cls, value: int) -> int:
        if not 0 <= value < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        return value

    @field_validator("workers")
    @classmethod
    def _validate_workers(cls, value: int) -> int:
        if value < 1:
            raise ValueError("workers must be positive")
        return value


class EliminationReport(BaseModel):
    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    qmax: int
    family: int | None = None
    cells: list[CellResult]
    sporadic: list[EliminationTrace] = Field(default_factory=list)

    model_config = {"populate_by_name": True}

    @property
    def any_survivor(self) -> bool:
        return any(c.has_survivor for c in self.cells) or any(
            t.survivors for t in self.sporadic
        )

    @property
    def consistent(self) -> bool:
        return all(c.agree for c in self.cells if c.valid and c.error is None)


class SieveRunReport(BaseModel):
    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    reports: list[SieveReport]

    model_config = {"populate_by_name": True}


class ConstructionReport(BaseModel):
    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    certificates: list[DesignCertificate]
    classes: list[IsomorphismClass]
    lambda_set: list[int]
    parameter_set: list[tuple[int, int, int]]
    expected_classes: int
    complete: bool

    model_config = {"populate_by_name": True}


class CatalogRecordStatus(BaseModel):
    record: str
    degree: int
    order: int
    stabilizer_order: int
    generator_file: Path


class CatalogReport(BaseModel):
    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    records: list[CatalogRecordStatus]
    written: list[Path] = Field(default_factory=list)

    model_config = {"populate_by_name": True}
