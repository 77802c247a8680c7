from __future__ import annotations

from pathlib import Path
from typing import Callable

from loguru import logger

from errors.errors import ErrEntityNotFound, ErrVerification
from models.permutation import PermGroup
from repositories.catalog_repository import CatalogRepository
from repositories.generator_repository import GeneratorRepository
from schemas.catalog import CatalogEntry
from services import hermitian
from services.catalog import builtin_catalog
from services.permgroup import contains, coset_action, find_subgroup, is_transitive, order, stabilizer

# subgroups located by random search: record name -> (host builder, spectrum)
COSET_SUBGROUPS: dict[str, tuple[Callable[[], PermGroup], set[int]]] = {
    "PSU_3(3)/PSL_2(7)": (lambda: hermitian.natural_actions(3, 3)[0][1], {1, 2, 3, 4, 7}),
    "PSU_4(2)/S_6": (lambda: hermitian.natural_actions(4, 2)[1][1], {1, 2, 3, 4, 5, 6}),
}

GEOMETRIC_ACTIONS: dict[str, Callable[[], PermGroup]] = {
    "PSU_3(3)/3^{1+2}:8": lambda: hermitian.natural_actions(3, 3)[0][1],
    "PSU_3(3)/4.S_4": lambda: hermitian.natural_actions(3, 3)[1][1],
    "PSU_3(3)/4^2:S_3": lambda: hermitian.frame_action(3, 3)[1],
    "PSU_4(2)/2.(A_4xA_4).2": lambda: hermitian.natural_actions(4, 2)[0][1],
    "PSU_4(2)/3_+^{1+2}:2A_4": lambda: hermitian.natural_actions(4, 2)[1][1],
    "PSU_4(2)/3^3:S_4": lambda: hermitian.frame_action(4, 2)[1],
}

# record name -> (n, q, domain) for the extension by the field automorphism
EXTENDED_DOMAINS: dict[str, tuple[int, int, str]] = {
    "PSU_3(3)/3^{1+2}:8": (3, 3, "isotropic"),
    "PSU_3(3)/4.S_4": (3, 3, "nonisotropic"),
    "PSU_3(3)/4^2:S_3": (3, 3, "frames"),
    "PSU_4(2)/2.(A_4xA_4).2": (4, 2, "isotropic"),
    "PSU_4(2)/3_+^{1+2}:2A_4": (4, 2, "nonisotropic"),
    "PSU_4(2)/3^3:S_4": (4, 2, "frames"),
}


class GroupCatalogService:
    def __init__(
        self,
        catalog_repo: CatalogRepository,
        generator_repo: GeneratorRepository,
        seed: int = 0,
    ) -> None:
        self._catalog = catalog_repo
        self._generators = generator_repo
        self._seed = seed
        self._groups: dict[str, PermGroup] = {}
        self._extensions: dict[str, PermGroup] = {}

    def entries(self) -> list[CatalogEntry]:
        try:
            return self._catalog.load()
        except ErrEntityNotFound:
            logger.info("Catalog - Service - no catalog file, using the built-in records")
            return builtin_catalog()

    def find(self, group: str | None = None, v: int | None = None) -> list[CatalogEntry]:
        selected = [
            e
            for e in self.entries()
            if (group is None or e.group_name == group) and (v is None or e.degree == v)
        ]
        if not selected:
            raise ErrEntityNotFound(f"no catalog record for group={group} v={v}")
        return selected

    def build(self, entry: CatalogEntry) -> PermGroup:
        """Construct the action of `entry` from the unitary geometry."""
        name = entry.record_name
        if name in GEOMETRIC_ACTIONS:
            group = GEOMETRIC_ACTIONS[name]()
        elif name in COSET_SUBGROUPS:
            host_builder, spectrum_hint = COSET_SUBGROUPS[name]
            host = host_builder()
            stab = entry.stabilizer_descriptions[0]
            sub = find_subgroup(host, stab.order, spectrum_hint, seed=self._seed)
            group = coset_action(host, sub).image
        else:
            raise ErrEntityNotFound(f"no construction known for {name}")
        return group.with_name(entry.group_name)

    def verify(self, entry: CatalogEntry, group: PermGroup) -> PermGroup:
        stab = entry.stabilizer_descriptions[0]
        if group.degree != entry.degree:
            raise ErrVerification(
                f"{entry.record_name}: degree {group.degree}, expected {entry.degree}",
                witness={"degree": group.degree},
            )
        if order(group) != entry.expected_order:
            raise ErrVerification(
                f"{entry.record_name}: order {order(group)}, expected {entry.expected_order}",
                witness={"order": order(group)},
            )
        if not is_transitive(group) or order(stabilizer(group, 0)) != stab.order:
            raise ErrVerification(
                f"{entry.record_name}: point stabilizer is not of order {stab.order}",
                witness={"stabilizer_order": order(stabilizer(group, 0))},
            )
        return group

    def load_group(self, entry: CatalogEntry) -> PermGroup:
        name = entry.record_name
        if name not in self._groups:
            if self._generators.exists(entry.generator_file):
                group = self.verify(entry, self._generators.load(entry.generator_file, entry.group_name))
            else:
                logger.info("{} - Service - generator file missing, rebuilding", name)
                group = self.verify(entry, self.build(entry))
                try:
                    self._generators.save(entry.generator_file, group)
                except OSError as e:
                    logger.warning("{} - Service - could not write {}: {}", name, entry.generator_file, e)
            self._groups[name] = group
        return self._groups[name]

    def load_extension(self, entry: CatalogEntry) -> PermGroup | None:
        """The group extended by the field automorphism, or None without a geometric model."""
        name = entry.record_name
        if name not in EXTENDED_DOMAINS:
            return None
        if name not in self._extensions:
            group = self.load_group(entry)
            extension = hermitian.extended_action(*EXTENDED_DOMAINS[name])
            expected = 2 * entry.expected_order
            if order(extension) != expected:
                raise ErrVerification(
                    f"{name}: extension has order {order(extension)}, expected {expected}",
                    witness={"order": order(extension)},
                )
            if not all(contains(extension, gen) for gen in group.generators):
                raise ErrVerification(
                    f"{name}: generator file is not labelled like the unitary model",
                    witness={"group": group.name},
                )
            self._extensions[name] = extension
        return self._extensions[name]

    def regenerate_catalog(self, entries: list[CatalogEntry] | None = None) -> list[Path]:
        entries = entries or builtin_catalog()
        written = []
        for entry in entries:
            group = self.verify(entry, self.build(entry))
            self._groups[entry.record_name] = group
            written.append(self._generators.save(entry.generator_file, group))
            logger.info(
                "{} - Service - degree {} order {} written", entry.record_name, entry.degree, order(group)
            )
        written.append(self._catalog.save(entries))
        return written
