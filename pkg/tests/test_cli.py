import json

import pytest

from app import main
from errors.handlers import EXIT_ERROR, EXIT_OK
from repositories import DesignRepository, GeneratorRepository
from services import design as designs
from services import hermitian
from services.permgroup import stabilizer


def test_sieve_json(capsys, data_dir):
    assert main(["sieve", "--json", "--data-dir", str(data_dir)]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == 1
    found = {(p["v"], p["k"], p["lam"]) for r in payload["reports"] for p in r["survivors"]}
    assert found == {(36, 21, 12), (36, 15, 6), (40, 27, 18), (45, 12, 3), (63, 32, 16)}


def test_eliminate_family_5(capsys):
    assert main(["eliminate", "--family", "5", "--qmax", "3", "--workers", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "v=1408" in out
    assert "v=8404641" in out
    assert "transposed" in out


def test_eliminate_invalid_family_cell_is_empty(capsys):
    assert main(["eliminate", "--family", "6", "--qmax", "2", "--workers", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "lemma 6" in out
    assert "line 6 q=2" not in out


def test_eliminate_json_is_deterministic(capsys, tmp_path):
    args = ["eliminate", "--qmax", "4", "--workers", "1", "--json"]
    assert main(args + ["--out", str(tmp_path / "a.json")]) == EXIT_OK
    assert main(args + ["--out", str(tmp_path / "b.json")]) == EXIT_OK
    capsys.readouterr()
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    assert main(["report", str(tmp_path / "a.json")]) == EXIT_OK
    assert "no survivors" in capsys.readouterr().out


def test_bad_arguments_exit_with_error():
    assert main(["eliminate", "--qmax", "1"]) == EXIT_ERROR
    assert main(["eliminate", "--family", "12"]) == EXIT_ERROR
    assert main(["report", "/nonexistent/report.json"]) == EXIT_ERROR


def test_verify_design_file(tmp_path, psu42_actions):
    g = dict(psu42_actions)[45]
    d = designs.find_base_blocks(g, stabilizer(g, 0), 12)[0]
    DesignRepository(tmp_path).save("d45.txt", designs.verify_symmetric(d), d)
    GeneratorRepository(tmp_path).save("g45.txt", g)
    args = ["verify", "--design", str(tmp_path / "d45.txt"), "--generators", str(tmp_path / "g45.txt")]
    assert main(args) == EXIT_OK

    lines = (tmp_path / "d45.txt").read_text().splitlines()
    lines[1] = lines[2]
    (tmp_path / "bad.txt").write_text("\n".join(lines) + "\n")
    args[2] = str(tmp_path / "bad.txt")
    assert main(args) == EXIT_ERROR


def test_verify_degree_mismatch(tmp_path, psu42_actions):
    d = hermitian.pg3_design(3)
    DesignRepository(tmp_path).save("pg.txt", designs.verify_symmetric(d), d)
    GeneratorRepository(tmp_path).save("g45.txt", dict(psu42_actions)[45])
    args = ["verify", "--design", str(tmp_path / "pg.txt"), "--generators", str(tmp_path / "g45.txt")]
    assert main(args) == EXIT_ERROR


@pytest.mark.slow
def test_construct_degree_45(capsys, tmp_path):
    assert main(["construct", "--group", "PSU_4(2)", "--v", "45", "--data-dir", str(tmp_path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "(45,12,3)" in out


@pytest.mark.slow
def test_construct_writes_the_acting_group(tmp_path):
    out = tmp_path / "out"
    args = ["construct", "--group", "PSU_3(3)", "--v", "63", "--data-dir", str(tmp_path), "--out", str(out)]
    assert main(args) == EXIT_OK
    names = sorted(p.name.removesuffix(".gens.txt") for p in out.glob("*.gens.txt"))
    assert names
    for name in names:
        design, gens = out / f"{name}.txt", out / f"{name}.gens.txt"
        assert main(["verify", "--design", str(design), "--generators", str(gens)]) == EXIT_OK
