from __future__ import annotations

from dataclasses import dataclass

from loguru import logger

from configs.Environment import EnvironmentSettings
from models.incidence import IncidenceStructure
from models.permutation import PermGroup
from schemas.catalog import CatalogEntry
from schemas.design import DesignCertificate, DesignParams, IsomorphismClass
from schemas.run import ConstructionReport
from services import design as designs
from services import hermitian
from services.group_catalog import GroupCatalogService
from services.permgroup import is_primitive, order, restrict, stabilizer
from services.sieve import sieve_catalog

EXPECTED_PARAMETERS = {(36, 21, 12), (36, 15, 6), (40, 27, 18), (45, 12, 3), (63, 32, 16)}
EXPECTED_LAMBDAS = {3, 6, 12, 16, 18}

# record name -> (n, q, the record's objects come first in combined_action)
PAIRED_CLASSES: dict[str, tuple[int, int, bool]] = {
    "PSU_3(3)/4.S_4": (3, 3, True),
    "PSU_3(3)/4^2:S_3": (3, 3, False),
    "PSU_4(2)/3_+^{1+2}:2A_4": (4, 2, True),
    "PSU_4(2)/3^3:S_4": (4, 2, False),
}

PG_COMPLEMENT = "complement of PG(3,3)"


@dataclass(frozen=True)
class ConstructedDesign:
    name: str
    entry: CatalogEntry
    params: DesignParams
    design: IncidenceStructure
    certificate: DesignCertificate
    acting: PermGroup


class ConstructionService:
    def __init__(self, catalog_service: GroupCatalogService, settings: EnvironmentSettings) -> None:
        self._catalog = catalog_service
        self._settings = settings

    def helpers(self, entry: CatalogEntry, group: PermGroup) -> list[tuple[str, PermGroup]]:
        """Subgroups whose orbits seed the base-block search."""
        found = [(f"point stabilizer {entry.stabilizer_descriptions[0].name}", stabilizer(group, 0))]
        if entry.record_name in PAIRED_CLASSES:
            n, q, first = PAIRED_CLASSES[entry.record_name]
            split, combined = hermitian.combined_action(n, q)
            own = range(split) if first else range(split, combined.degree)
            other = combined.degree - 1 if first else 0
            stab = stabilizer(combined, other)
            helper = restrict(stab, own).image
            if helper.degree == group.degree:
                found.append((f"stabilizer of the other class ({'frame' if first else 'point'})", helper))
        return found

    def construct_entry(self, entry: CatalogEntry) -> list[ConstructedDesign]:
        group = self._catalog.load_group(entry)
        ks = sorted({p.k for report in sieve_catalog(entry) for p in report.survivors})
        if not ks:
            logger.info("{} - Service - no admissible k", entry.record_name)
            return []
        seen: set[tuple] = set()
        built = []
        for label, helper in self.helpers(entry, group):
            for k in ks:
                for d in designs.find_base_blocks(group, helper, k):
                    if d.blocks in seen:
                        continue
                    seen.add(d.blocks)
                    params = designs.verify_symmetric(d)
                    acting = designs.acting_group(d, group)
                    if acting is None:
                        acting = designs.acting_group(d, self._catalog.load_extension(entry))
                        if acting is not None:
                            logger.info(
                                "{} - Service - {} is flag-transitive under {}",
                                entry.record_name,
                                params,
                                acting.name,
                            )
                    if acting is None:
                        logger.info(
                            "{} - Service - {} design is not flag-transitive", entry.record_name, params
                        )
                        continue
                    name = f"{entry.generator_file.stem}_{params.v}_{params.k}_{params.lam}_{len(built) + 1}"
                    certificate = DesignCertificate(
                        name=name,
                        params=params,
                        group_name=acting.name,
                        group_order=order(acting),
                        flag_transitive=True,
                        point_primitive=is_primitive(acting),
                        stabilizer_order=order(stabilizer(acting, 0)),
                        block_stabilizer_helper=label,
                        fingerprint=designs.block_fingerprint(d),
                    )
                    built.append(ConstructedDesign(name, entry, params, d, certificate, acting))
        logger.info("{} - Service - {} designs", entry.record_name, len(built))
        return built

    def classify(self, built: list[ConstructedDesign]) -> list[IsomorphismClass]:
        budget = self._settings.ISOMORPHISM_NODE_BUDGET
        representatives: list[tuple[ConstructedDesign, IsomorphismClass]] = []
        for item in built:
            for rep, cls in representatives:
                if rep.params != item.params:
                    continue
                same, witness = designs.isomorphic(item.design, rep.design, budget)
                if same:
                    cls.members.append(item.name)
                    cls.witnesses[item.name] = [x + 1 for x in witness]
                    break
            else:
                representatives.append(
                    (item, IsomorphismClass(params=item.params, members=[item.name], witnesses={}))
                )
        reference = designs.complement(hermitian.pg3_design(3))
        for rep, cls in representatives:
            if rep.params.as_tuple() == (40, 27, 18):
                same, witness = designs.isomorphic(reference, rep.design, budget)
                if same:
                    cls.reference = PG_COMPLEMENT
                    cls.witnesses[PG_COMPLEMENT] = [x + 1 for x in witness]
        return [cls for _, cls in representatives]

    def run(
        self, group: str | None = None, v: int | None = None
    ) -> tuple[ConstructionReport, list[ConstructedDesign]]:
        built = []
        for entry in self._catalog.find(group, v):
            built.extend(self.construct_entry(entry))
        classes = self.classify(built)
        lambdas = sorted({d.params.lam for d in built})
        parameters = sorted({d.params.as_tuple() for d in built})
        certified = bool(built) and all(
            d.certificate.flag_transitive and d.certificate.point_primitive for d in built
        )
        if group is None and v is None:
            complete = (
                certified
                and set(parameters) == EXPECTED_PARAMETERS
                and set(lambdas) == EXPECTED_LAMBDAS
                and len(classes) == self._settings.EXPECTED_DESIGN_CLASSES
            )
        else:
            complete = certified
        if not complete:
            logger.warning(
                "Construction - Service - {} classes with parameters {}, expected {} classes",
                len(classes),
                parameters,
                self._settings.EXPECTED_DESIGN_CLASSES,
            )
        report = ConstructionReport(
            certificates=[d.certificate for d in built],
            classes=classes,
            lambda_set=lambdas,
            parameter_set=parameters,
            expected_classes=self._settings.EXPECTED_DESIGN_CLASSES,
            complete=complete,
        )
        return report, built
