import json

import pytest

from multifan.catalog import catalog, gamma_fan, octahedron_fan, square_fan, suspended_torus_noncollinear
from multifan.cli import main
from multifan.errors import FormatError
from multifan.fan import MultiFan
from multifan.io import FanDocument, document_from_fan, dump, dumps, load, loads, parse_document


@pytest.mark.parametrize("name", sorted(catalog()))
def test_catalog_round_trip(name):
    obj = catalog()[name]
    doc = loads(dumps(obj))
    if isinstance(obj, MultiFan):
        assert doc.fan() == obj
    else:
        assert doc.cycle == obj and doc.coloring is None


def test_document_fields_round_trip():
    doc = document_from_fan(square_fan(), polarization=(1, 3), seed=7)
    again = parse_document(json.loads(json.dumps(doc.to_dict())))
    assert again == doc
    text = dumps(doc)
    assert '"weight": "1/1"' in text and '"seed": 7' in text


def test_unsorted_simplices_carry_their_sign():
    doc = loads(json.dumps({"n": 2, "m": 2, "cycle": [{"simplex": [2, 1], "weight": "1"}]}))
    assert doc.cycle.weight((1, 2)) == -1


@pytest.mark.parametrize(
    "payload",
    [
        "not json",
        "[]",
        json.dumps({"n": 2, "m": 2}),
        json.dumps({"n": 2, "m": 2, "cycle": [{"simplex": [1, 3]}]}),
        json.dumps({"n": 2, "m": 2, "cycle": [{"simplex": [1, 2], "weight": 0.5}]}),
        json.dumps({"n": 2, "m": 2, "cycle": [], "lambda": [["1", "0"]]}),
        json.dumps({"n": 2, "m": 2, "cycle": [], "format_version": 99}),
        json.dumps({"n": 1, "m": 2, "cycle": [{"simplex": [1]}, {"simplex": [1]}]}),
    ],
)
def test_malformed_documents(payload):
    with pytest.raises(FormatError):
        loads(payload)


def test_missing_lambda_cannot_build_a_fan():
    doc = FanDocument(gamma_fan().cycle, 2)
    with pytest.raises(FormatError):
        doc.fan()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, fan in {
        "gamma": gamma_fan(independent=True),
        "sq": square_fan(),
        "octa": octahedron_fan(),
        "storus": suspended_torus_noncollinear(),
    }.items():
        paths[name] = tmp_path / f"{name}.json"
        dump(fan, paths[name])
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps({"n": 2, "m": 2, "cycle": [{"simplex": [1, 2], "weight": "1/1"}], "lambda": [["1", "0"], ["0", "1"]]}))
    paths["broken"] = broken
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_validate(files, capsys):
    code, out, _ = run(capsys, "validate", files["octa"])
    assert code == 0 and out.startswith("valid, 0 singular")
    code, out, _ = run(capsys, "validate", files["gamma"])
    assert "singular: 5,6" in out
    code, _, err = run(capsys, "validate", files["broken"])
    assert code == 2 and "NotACycle" in err


def test_cli_algebra_commands(files, capsys):
    assert run(capsys, "dvector", files["gamma"])[1].strip() == "(1,4,1)"
    assert run(capsys, "hilbert", files["sq"])[1].strip() == "1+2t^2+t^4"
    code, out, _ = run(capsys, "volpoly", files["sq"], "--at", "1,1,1,1")
    assert code == 0 and "value: 4/1" in out
    code, out, _ = run(capsys, "ann", files["sq"], "--degree", "1", "--json")
    assert len(json.loads(out)["basis"]) == 2
    code, out, _ = run(capsys, "editable", files["storus"], "--json")
    assert json.loads(out)["editable"] is False


def test_cli_constructions(files, capsys, tmp_path):
    out_file = tmp_path / "p.json"
    assert run(capsys, "project", files["octa"], "--face", "1", "--out", out_file)[0] == 0
    assert run(capsys, "dvector", out_file)[1].strip() == "(1,2,1)"
    code, out, _ = run(capsys, "join", files["sq"], files["sq"])
    assert code == 0 and loads(out).fan().n == 4
    code, out, _ = run(capsys, "suspend", files["octa"], "--apex-y", "1,1,1,-1")
    assert loads(out).apex == (7, 8)
    code, _, err = run(capsys, "csum", files["sq"], files["sq"], "--identify", "1:1,3:3")
    assert code == 2 and "DependentGlueSet" in err


def test_cli_moves(files, capsys):
    code, out, _ = run(capsys, "move", files["storus"], "--kind", "0,2", "--target", "1,2,4", "--suspended", "--seed", "3")
    assert code == 0 and loads(out).fan().m == 10
    code, out, _ = run(capsys, "shuffle", files["octa"], "--count", "2", "--seed", "1", "--json")
    payload = json.loads(out)
    assert len(payload["moves"]) == 2 and payload["fan"]["n"] == 3
    code, _, err = run(capsys, "move", files["octa"], "--kind", "0,3", "--target", "1,3,5")
    assert code == 2 and "MoveNotApplicable" in err


def test_cli_rx_and_seed_determinism(files, capsys, monkeypatch):
    code, out, _ = run(capsys, "rx", files["storus"], "--seed", "11")
    assert code == 0 and out.startswith("r = 2")
    first = run(capsys, "rx", files["gamma"], "--json", "--seed", "4")[1]
    assert first == run(capsys, "rx", files["gamma"], "--json", "--seed", "4")[1]
    monkeypatch.setenv("MULTIFAN_SEED", "4")
    assert json.loads(run(capsys, "rx", files["gamma"], "--json")[1])["seed"] == 4


def test_cli_catalog_export(capsys):
    code, out, _ = run(capsys, "catalog")
    assert "gamma_independent" in out.split()
    code, out, _ = run(capsys, "catalog", "minimal_torus")
    assert code == 0 and loads(out).cycle.m == 7
    assert run(capsys, "catalog", "nope")[0] == 2


def test_consistency_errors_exit_3(files, capsys, monkeypatch):
    import multifan.cli as cli
    from multifan.errors import SymmetryViolation

    def broken(*args, **kwargs):
        raise SymmetryViolation("forced")

    monkeypatch.setattr(cli, "d_vector", broken)
    code, _, err = run(capsys, "dvector", files["sq"])
    assert code == 3 and "SymmetryViolation" in err


def test_load_reports_missing_file(tmp_path):
    from multifan.errors import MultiFanError

    with pytest.raises(MultiFanError):
        load(tmp_path / "absent.json")
