from schemas.catalog import CatalogEntry, FamilyContext, StabilizerDescription
from schemas.design import DesignCertificate, DesignParams, IsomorphismClass
from schemas.elimination import (
    CellResult,
    DegreeDomination,
    EliminationTrace,
    FailureReason,
    SieveReport,
)
from schemas.run import (
    CatalogRecordStatus,
    CatalogReport,
    Command,
    ConstructionReport,
    EliminationReport,
    RunConfig,
    SieveRunReport,
)

__all__ = [
    "CatalogEntry",
    "CatalogRecordStatus",
    "CatalogReport",
    "CellResult",
    "Command",
    "ConstructionReport",
    "DegreeDomination",
    "DesignCertificate",
    "DesignParams",
    "EliminationReport",
    "EliminationTrace",
    "FailureReason",
    "FamilyContext",
    "IsomorphismClass",
    "RunConfig",
    "SieveReport",
    "SieveRunReport",
    "StabilizerDescription",
]
