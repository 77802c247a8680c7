import pytest

from errors.errors import ErrEntityNotFound, ErrFormat
from models.permutation import PermGroup, Permutation
from repositories import CatalogRepository, DesignRepository, GeneratorRepository
from services.catalog import builtin_catalog
from services.group_catalog import GroupCatalogService
from services.permgroup import contains, order
from services.design import verify_symmetric
from services.hermitian import pg3_design

GENERATORS = """# S_3 on three points
degree 3
2 1 3

2 3 1
"""


def test_generator_file_parse_and_render(tmp_path):
    group = GeneratorRepository.parse(GENERATORS, "S_3")
    assert group.degree == 3
    assert group.generators[0] == Permutation((1, 0, 2))
    repo = GeneratorRepository(tmp_path)
    path = repo.save("s3.txt", group)
    assert path.read_text() == "degree 3\n2 1 3\n2 3 1\n"
    assert repo.load("s3.txt", "S_3").generators == group.generators


@pytest.mark.parametrize(
    "text,line",
    [
        ("degre 3\n1 2 3\n", 1),
        ("degree 3\n1 2\n", 2),
        ("degree 3\n1 2 3\n1 1 3\n", 3),
        ("degree 3\n1 x 3\n", 2),
        ("degree 3\n", 1),
    ],
)
def test_generator_file_errors_carry_line_numbers(text, line):
    with pytest.raises(ErrFormat) as e:
        GeneratorRepository.parse(text)
    assert e.value.line_number == line


def test_missing_generator_file(tmp_path):
    with pytest.raises(ErrEntityNotFound):
        GeneratorRepository(tmp_path).load("absent.txt")


def test_design_file_is_bit_exact(tmp_path):
    d = pg3_design(3)
    params = verify_symmetric(d)
    repo = DesignRepository(tmp_path)
    path = repo.save("pg.txt", params, d)
    text = path.read_text()
    loaded_params, loaded = repo.load("pg.txt")
    assert loaded_params == params
    assert loaded == d
    assert DesignRepository.render(loaded_params, loaded) == text
    assert text.splitlines()[0] == "40 13 4"


@pytest.mark.parametrize(
    "text,line",
    [
        ("3 2\n", 1),
        ("3 2 1\n1 2\n2 3\n", 3),
        ("3 2 1\n1 2\n2 3\n3 1\n", 4),
        ("3 2 1\n1 2\n2 3\n1 4\n", 4),
        ("3 2 1\n1 2 3\n2 3\n1 3\n", 2),
    ],
)
def test_design_file_errors(text, line):
    with pytest.raises(ErrFormat) as e:
        DesignRepository.parse(text)
    assert e.value.line_number == line


def test_shipped_catalog_matches_builtin(data_dir):
    assert CatalogRepository(data_dir).load() == builtin_catalog()


def test_catalog_round_trip(tmp_path):
    repo = CatalogRepository(tmp_path)
    repo.save(builtin_catalog())
    assert repo.load() == builtin_catalog()


def test_catalog_rejects_inconsistent_order(tmp_path):
    (tmp_path / "catalog.txt").write_text("PSU_3(3)/X 28 6048 f.txt 215 28\n")
    with pytest.raises(ErrFormat):
        CatalogRepository(tmp_path).load()


def test_group_file_round_trip(tmp_path):
    group = PermGroup(4, (Permutation((1, 2, 3, 0)),), "C_4")
    repo = GeneratorRepository(tmp_path)
    repo.save("c4.txt", group)
    assert GeneratorRepository.render(repo.load("c4.txt")) == GeneratorRepository.render(group)


def test_rebuilt_generator_file_is_written(tmp_path):
    catalog = GroupCatalogService(CatalogRepository(tmp_path), GeneratorRepository(tmp_path))
    (entry,) = catalog.find("PSU_3(3)", 28)
    group = catalog.load_group(entry)
    assert (tmp_path / entry.generator_file).is_file()
    reloaded = GroupCatalogService(CatalogRepository(tmp_path), GeneratorRepository(tmp_path))
    again = reloaded.load_group(entry)
    assert GeneratorRepository.render(again) == GeneratorRepository.render(group)


def test_load_extension(tmp_path):
    catalog = GroupCatalogService(CatalogRepository(tmp_path), GeneratorRepository(tmp_path))
    (entry,) = catalog.find("PSU_3(3)", 28)
    extension = catalog.load_extension(entry)
    assert order(extension) == 12096
    assert all(contains(extension, gen) for gen in catalog.load_group(entry).generators)
    assert catalog.load_extension(entry) is extension
    (coset,) = catalog.find("PSU_3(3)", 36)
    assert catalog.load_extension(coset) is None
