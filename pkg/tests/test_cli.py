import json

import pytest

from rankvar.cli import main
from rankvar.fields import FiniteField
from rankvar.modules import AlgebraSpec, free_module, save_module, trivial_module


@pytest.fixture()
def module_files(tmp_path):
    spec = AlgebraSpec(2, 2, FiniteField(2, 1), "grouplike")
    free_path = tmp_path / "free.json"
    triv_path = tmp_path / "k.json"
    save_module(free_module(spec), str(free_path))
    save_module(trivial_module(spec), str(triv_path))
    return str(free_path), str(triv_path)


def test_jordan_command(module_files, capsys):
    free_path, triv_path = module_files
    assert main(["jordan", free_path, "z1"]) == 0
    assert capsys.readouterr().out.strip() == "2,2"
    assert main(["jordan", triv_path, "z1+z2"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_support_command(module_files, capsys):
    free_path, triv_path = module_files
    assert main(["support", triv_path, "--field", "2"]) == 0
    js = json.loads(capsys.readouterr().out)
    assert js["support"] == ["[0:1]", "[1:0]", "[1:1]"]
    assert main(["support", free_path, "--field", "4"]) == 0
    js = json.loads(capsys.readouterr().out)
    assert js["support"] == [] and js["charts"] == [True, True]


def test_cosupport_command(module_files, capsys):
    _, triv_path = module_files
    assert main(["cosupport", triv_path, "--field", "4"]) == 0
    js = json.loads(capsys.readouterr().out)
    assert js["cosupport"] == js["support"]


def test_carlson_and_koszul_roundtrip(tmp_path, capsys):
    assert main(["carlson", "y1", "-p", "2", "-r", "2"]) == 0
    mod = json.loads(capsys.readouterr().out)
    assert mod["dim"] == 2
    path = tmp_path / "L.json"
    path.write_text(json.dumps(mod))
    assert main(["support", str(path), "--field", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["support"] == ["[0:1]"]
    assert main(["koszul", str(path), "y2"]) == 0
    cone = json.loads(capsys.readouterr().out)
    assert cone["p"] == 2 and cone["r"] == 2


def test_ext_command(module_files, capsys):
    _, triv_path = module_files
    assert main(["ext", triv_path, triv_path, "--ext-bound", "3"]) == 0
    js = json.loads(capsys.readouterr().out)
    assert js["ext_dims"] == {"1": 2, "2": 3, "3": 4}


def test_generic_point_command(tmp_path, capsys):
    ideal = tmp_path / "ideal.txt"
    ideal.write_text("y1*y3 - y2^2\n")
    assert main(["generic-point", str(ideal), "-p", "3"]) == 0
    js = json.loads(capsys.readouterr().out)
    assert js["schema"] == "v1"
    assert all(js["checks"].values())


def test_verify_command(capsys):
    assert main(["verify", "dade", "--count", "8"]) == 0
    js = json.loads(capsys.readouterr().out)
    assert js["passed"] and js["suite"] == "dade"


def test_input_errors_exit_2(module_files, capsys):
    _, triv_path = module_files
    assert main(["jordan", triv_path, "z1*z2"]) == 2
    assert main(["jordan", "/nonexistent.json", "z1"]) == 2
    assert main(["verify", "nosuch"]) == 2
    assert main(["support", triv_path, "--field", "3"]) == 2
