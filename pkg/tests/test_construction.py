import pytest

from configs.Environment import get_environment_variables
from repositories import CatalogRepository, GeneratorRepository
from services.construction import EXPECTED_LAMBDAS, PG_COMPLEMENT, ConstructionService
from services.group_catalog import GroupCatalogService

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def construction(tmp_path_factory):
    data = tmp_path_factory.mktemp("data")
    catalog = GroupCatalogService(CatalogRepository(data), GeneratorRepository(data), seed=0)
    return ConstructionService(catalog, get_environment_variables())


def test_regenerated_catalog_orders(tmp_path):
    catalog = GroupCatalogService(CatalogRepository(tmp_path), GeneratorRepository(tmp_path))
    written = catalog.regenerate_catalog()
    assert len(written) == 9
    reloaded = GroupCatalogService(CatalogRepository(tmp_path), GeneratorRepository(tmp_path))
    for entry in reloaded.entries():
        reloaded.load_group(entry)


def test_classes_on_63_points(construction):
    report, built = construction.run("PSU_3(3)", 63)
    assert {d.params.as_tuple() for d in built} == {(63, 32, 16)}
    assert len(report.classes) >= 2
    assert report.complete
    assert "PSU_3(3):2" in {c.group_name for c in report.certificates}


def test_degree_40_designs(construction):
    report, built = construction.run("PSU_4(2)", 40)
    assert {d.params.as_tuple() for d in built} == {(40, 27, 18)}
    assert len(report.classes) >= 2
    assert [c.reference for c in report.classes].count(PG_COMPLEMENT) == 1


def test_full_construction(construction):
    report, built = construction.run()
    assert set(report.lambda_set) == EXPECTED_LAMBDAS
    assert all(c.flag_transitive and c.point_primitive for c in report.certificates)
    orders = {c.group_order for c in report.certificates}
    assert {6048, 25920} <= orders <= {6048, 12096, 25920, 51840}
    for cls in report.classes:
        for member in cls.members[1:]:
            assert len(cls.witnesses[member]) == cls.params.v
