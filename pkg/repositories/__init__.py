from repositories.catalog_repository import CatalogRepository
from repositories.design_repository import DesignRepository
from repositories.generator_repository import GeneratorRepository

__all__ = ["CatalogRepository", "DesignRepository", "GeneratorRepository"]
