import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from ahdepth import io as dio
from ahdepth import regions as R
from ahdepth.cli import main
from ahdepth.errors import NonUnitRow, ParseError
from ahdepth.verify import five_atom_dataset

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_read_two_points(tmp_path):
    data = dio.read_dataset(write(tmp_path, "a.csv", "0,0,1\n1,0,0\n"))
    assert data.n == 2 and data.weights == (Fraction(1, 2), Fraction(1, 2))


def test_read_weights_and_header(tmp_path):
    data = dio.read_dataset(write(tmp_path, "a.csv", "# comment\nx,y,weight\n1,0,1/4\n0,1,3/4\n"))
    assert data.dim == 2 and data.weights == (Fraction(1, 4), Fraction(3, 4))
    # unit-norm rows with an extra column are read as weighted data
    data = dio.read_dataset(write(tmp_path, "b.csv", "1,0,0.25\n0,1,0.75\n"))
    assert data.dim == 2 and data.weights == (Fraction(1, 4), Fraction(3, 4))


def test_non_unit_row_named(tmp_path):
    with pytest.raises(NonUnitRow) as exc:
        dio.read_dataset(write(tmp_path, "a.csv", "0,0,2\n"))
    assert exc.value.row == 1 and "row 1" in str(exc.value)
    data = dio.read_dataset(write(tmp_path, "a.csv", "0,0,2\n"), normalize=True)
    assert np.allclose(data.points, [[0, 0, 1]])


def test_parse_errors_report_location(tmp_path):
    with pytest.raises(ParseError) as exc:
        dio.read_dataset(write(tmp_path, "a.csv", "0,0,1\n0,abc,1\n"))
    assert (exc.value.row, exc.value.col) == (2, 2)
    with pytest.raises(ParseError):
        dio.read_dataset(write(tmp_path, "a.csv", "0,0,1\n0,1\n"))
    with pytest.raises(ParseError):
        dio.read_dataset(write(tmp_path, "a.csv", ""))


def test_fixture_has_five_atoms():
    data = dio.read_dataset(dio.fixture_path())
    assert data.n == 5 and set(data.weights) == {Fraction(1, 5)}
    assert np.allclose(data.points, five_atom_dataset().points)


def test_depth_row_format():
    text = dio.write_depths(np.array([[0.0, 0.0, 1.0]]), [Fraction(2, 5)])
    assert text.splitlines()[-1] == "0.0,0.0,1.0,2,5,0.4"


def test_empty_region_json():
    out = json.loads(dio.region_to_json(R.CentralRegion(3, Fraction(1, 2), "empty")))
    assert out["kind"] == "empty" and out["alpha"] == 0.5


@pytest.mark.parametrize("alpha", [Fraction(2, 5), Fraction(1, 5), Fraction(1, 2)])
def test_region_roundtrip(tmp_path, alpha):
    reg = R.central_region(five_atom_dataset(), alpha)
    path = tmp_path / "r.json"
    dio.write_region(reg, path)
    back = dio.read_region(path)
    assert back.to_dict() == reg.to_dict()


def test_arc_region_roundtrip(tmp_path):
    reg = R.CentralRegion(2, Fraction(1, 3), "arc_list", arcs=[(0.5, 1.25)])
    dio.write_region(reg, tmp_path / "r.json")
    assert dio.read_region(tmp_path / "r.json").to_dict() == reg.to_dict()


def test_write_to_missing_directory(tmp_path):
    with pytest.raises(dio.IoError):
        dio.write_depths(np.array([[1.0, 0.0]]), [Fraction(1)], tmp_path / "no" / "x.csv")


# ---------------------------------------------------------------------------
# command line


@pytest.fixture
def queries(tmp_path):
    return write(tmp_path, "q.csv", "0,0,1\n-1,0,0\n")


def test_cli_depth(capsys, queries):
    assert main(["depth", str(dio.fixture_path()), queries]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "# command=depth seed=0"
    assert lines[2].endswith(",2,5,0.4") and lines[3].endswith(",1,5,0.2")


@pytest.mark.parametrize("method", ["oracle", "projected", "table"])
def test_cli_depth_methods_agree(capsys, queries, method):
    main(["depth", str(dio.fixture_path()), queries])
    ref = capsys.readouterr().out
    assert main(["depth", str(dio.fixture_path()), queries, "--method", method]) == 0
    assert capsys.readouterr().out == ref


def test_cli_is_deterministic(tmp_path, queries):
    outs = []
    for k in range(2):
        out = tmp_path / f"o{k}.json"
        assert main(["approx", str(dio.fixture_path()), queries, "--m", "50", "--seed", "3",
                     "--format", "json", "-o", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["meta"]["seed"] == 3


def test_cli_region_and_median(capsys):
    assert main(["region", str(dio.fixture_path()), "--alpha", "2/5"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["kind"] == "spherical_polygon" and out["alpha_num"] == 2 and out["meta"]["seed"] == 0
    assert main(["median", str(dio.fixture_path())]) == 0
    out = json.loads(capsys.readouterr().out)
    assert (out["max_depth_num"], out["max_depth_den"]) == (2, 5)


def test_cli_generate_and_simulate(tmp_path, capsys):
    assert main(["generate", str(CONFIGS / "model_vmf.json"), "--n", "4", "--seed", "2"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("# seed=2 n=4") and len(text.splitlines()) == 6
    assert main(["simulate", str(CONFIGS / "experiment_cap.json"), "--format", "csv"]) == 0
    assert capsys.readouterr().out.splitlines()[1] == "10,0,sup_error,0.5"


def test_cli_exit_codes(tmp_path, capsys, queries):
    bad = write(tmp_path, "bad.csv", "0,0,2\n")
    assert main(["depth", bad, queries]) == 3
    assert "row 1" in capsys.readouterr().err
    assert main(["depth", str(tmp_path / "missing.csv"), queries]) == 3
    assert main(["bogus"]) == 2
    assert main(["region", str(dio.fixture_path()), "--alpha", "7/5"]) == 2
    assert main(["approx", str(dio.fixture_path()), queries, "--m", "0"]) == 2
    assert main(["verify", "--mutate", "closed-boundary"]) == 1
    assert main(["verify"]) == 0


@pytest.mark.parametrize("name", sorted(p.name for p in CONFIGS.glob("*.json")))
def test_shipped_configs_parse(name):
    from ahdepth import lab
    from ahdepth import models as M
    spec = dio.read_json(CONFIGS / name)
    if name.startswith("experiment"):
        lab.ExperimentSpec.from_dict(spec)
    else:
        M.from_dict(spec)
