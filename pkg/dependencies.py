from __future__ import annotations

from configs.Environment import get_environment_variables
from repositories import CatalogRepository, DesignRepository, GeneratorRepository
from schemas.run import RunConfig
from services.construction import ConstructionService
from services.group_catalog import GroupCatalogService
from services.sweep import EliminationService


def get_group_catalog_service(cfg: RunConfig) -> GroupCatalogService:
    return GroupCatalogService(
        CatalogRepository(cfg.data_dir),
        GeneratorRepository(cfg.data_dir),
        seed=cfg.seed,
    )


def get_construction_service(cfg: RunConfig) -> ConstructionService:
    return ConstructionService(get_group_catalog_service(cfg), get_environment_variables())


def get_elimination_service(cfg: RunConfig) -> EliminationService:
    env = get_environment_variables()
    return EliminationService(cfg.workers, seed=cfg.seed, divisor_limit=env.DIVISOR_LIMIT)


def get_design_repository(cfg: RunConfig) -> DesignRepository:
    return DesignRepository(cfg.out or cfg.data_dir)


def get_generator_repository(cfg: RunConfig) -> GeneratorRepository:
    return GeneratorRepository(cfg.data_dir)
