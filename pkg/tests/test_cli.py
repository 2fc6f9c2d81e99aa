import json

import pytest

from zsmatch.cli import main
from zsmatch.jsonio import corpus_file, corpus_names, detect_kind, export_corpus, read_json
from zsmatch.errors import InputError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_corpus_is_complete():
    names = set(corpus_names())
    assert {"S3", "trivial_G2", "model_1", "model_2", "model_3", "binary_odometer", "Z2xZ2",
            "klein", "mp2_broken"} <= names


def test_export_matches_shipped_corpus(tmp_path):
    written = export_corpus(tmp_path)
    for name in written:
        assert read_json(tmp_path / f"{name}.json") == read_json(corpus_file(name))


def test_detect_kind():
    assert detect_kind({"C": {}, "D": {}}) == "matched_pair"
    assert detect_kind({"cochain": []}) == "categorical_cochain"
    with pytest.raises(InputError):
        detect_kind([1, 2])
    with pytest.raises(InputError):
        detect_kind({"what": 1})


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", "S3")
    assert code == 0 and "valid matched pair" in out and "|C⋈D| = 6" in out


def test_validate_broken(capsys):
    code, out, _ = run(capsys, "validate", "mp2_broken")
    assert code == 1
    assert "MP2Violation" in out and "witness: ('g1', 'h1', 'h1')" in out


def test_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"objects": [1,\n ]}')
    code, _out, err = run(capsys, "validate", str(bad))
    assert code == 3 and "bad.json:2:2" in err


def test_missing_file(capsys):
    code, _out, err = run(capsys, "homology", "does_not_exist")
    assert code == 3 and "no such file" in err


@pytest.mark.parametrize("argv,expected", [
    (["homology", "Z2"], ["Z", "Z/2", "0", "Z/2"]),
    (["homology", "gamma_2", "--max-degree", "2"], ["Z", "0", "0"]),
    (["homology", "discrete3", "--max-degree", "1"], ["Z^3", "0"]),
    (["homology", "S3", "--which", "diagonal", "--max-degree", "2"], ["Z", "Z/2", "0"]),
])
def test_homology_text(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    groups = [line.split("= ")[1] for line in out.splitlines()[1:]]
    assert groups == expected


def test_homology_json(capsys):
    code, out, _ = run(capsys, "homology", "Z3", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["homology"][1] == {"degree": 1, "free_rank": 0, "torsion": [3]}


def test_homology_category_has_no_diagonal(capsys):
    code, _out, err = run(capsys, "homology", "Z2", "--which", "total")
    assert code == 3 and "categorical" in err


def test_cap_exceeded(capsys):
    code, _out, err = run(capsys, "homology", "model_3", "--cap", "50")
    assert code == 2 and "cap" in err


def test_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("ZSMATCH_CAP", "50")
    code, _out, _err = run(capsys, "homology", "model_3")
    assert code == 2


def test_compare_and_dump(capsys, tmp_path):
    dump = tmp_path / "maps.json"
    code, out, _ = run(capsys, "compare", "S3", "--max-degree", "2", "--dump-map", str(dump))
    assert code == 0
    lines = out.splitlines()
    assert lines[3].split()[:4] == ["1", "Z/2", "Z/2", "Z/2"]
    assert "NO" not in out
    maps = json.loads(dump.read_text())
    assert set(maps) == {"Π", "Ψ", "∇"}
    assert maps["Π"]["degrees"][0]["matrix"]


def test_compare_json(capsys):
    code, out, _ = run(capsys, "compare", "model_2", "--max-degree", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert [r["bowtie"] for r in data["rows"]] == ["Z", "0", "0"]


def test_spectral(capsys):
    code, out, _ = run(capsys, "spectral", "trivial_G2", "--format", "json")
    data = json.loads(out)
    nonzero = {(g["p"], g["q"]) for g in data["groups"] if g["free_rank"] or g["torsion"]}
    assert code == 0 and nonzero == {(0, 0)}


def test_odometer(capsys):
    code, out, _ = run(capsys, "odometer", "binary_odometer")
    assert code == 0
    assert "H_1 = Z\n" in out and "H_2 = 0" in out and "criterion met at length 1" in out
    code, out, _ = run(capsys, "odometer", "loop_p3", "--format", "json")
    data = json.loads(out)
    assert data["H1"] is None and data["H1_ses"] == {"sub": "Z", "quotient": "Z/2",
                                                     "split": "unknown"}


def test_odometer_rejects_pair(capsys):
    assert run(capsys, "odometer", "S3")[0] == 3


def test_cocycle_cohomologous(capsys):
    code, out, _ = run(capsys, "cocycle", "Z2", "--cochain", "z2_half", "--action", "cohomologous")
    assert code == 0 and "cohomologous to 0; b = g1: 1/4" in out
    code, out, _ = run(capsys, "cocycle", "klein", "--cochain", "klein_cocycle",
                       "--mode", "dual", "--action", "cohomologous")
    assert code == 0 and "not cohomologous to 0" in out


def test_cocycle_transfer_json(capsys):
    code, out, _ = run(capsys, "cocycle", "klein", "--cochain", "klein_cocycle",
                       "--action", "transfer", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["categorical_ok"] and len(data["psi2"]) == 4


def test_cocycle_invalid(capsys, tmp_path):
    bad = tmp_path / "c.json"
    bad.write_text(json.dumps({"cochain": [["g1", "g1", "1/2"]]}))
    code, out, _ = run(capsys, "cocycle", "Z3", "--cochain", str(bad))
    assert code == 1 and "INVALID" in out


def test_cocycle_needs_cochain(capsys):
    assert run(capsys, "cocycle", "Z2")[0] == 3


def test_selftest_deterministic(capsys):
    first = run(capsys, "selftest", "--seed", "11", "--format", "json")
    second = run(capsys, "selftest", "--seed", "11", "--format", "json")
    assert first == second and first[0] == 0
    assert all(r["ok"] for r in json.loads(first[1])["results"])


def test_output_byte_identical(capsys):
    a = run(capsys, "compare", "swap", "--max-degree", "2")
    b = run(capsys, "compare", "swap", "--max-degree", "2")
    assert a == b


def test_bad_cap_flag():
    with pytest.raises(SystemExit):
        main(["homology", "Z2", "--cap", "0"])
