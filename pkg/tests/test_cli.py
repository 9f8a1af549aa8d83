import json

import pytest

from quatrefl.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lines(capsys):
    code, out, _ = run(capsys, "lines", "U")
    assert code == 0 and out.startswith("165 lines in dimension 5")
    code, out, _ = run(capsys, "lines", "S1")
    assert "36 lines" in out and "9 frames" in out


def test_poincare_and_codim(capsys):
    code, out, _ = run(capsys, "poincare", "Q", "--factor")
    assert code == 0 and "(1+t)(1+25t)(1+37t)" in out
    code, out, _ = run(capsys, "poincare", "family:Q8:pm1:2", "--factor", "--method", "delres")
    assert code == 0 and "(1+t)(1+9t)" in out
    code, out, _ = run(capsys, "codim", "family:Q8:full:4", "--method", "formula", "--factor")
    assert code == 0 and "(1+7t)(1+15t)(1+23t)(1+31t)" in out


def test_codim_methods_agree(capsys):
    outs = []
    for m in ("lattice", "enumerate"):
        code, out, _ = run(capsys, "codim", "S1", "--method", m, "--json")
        assert code == 0
        outs.append(json.loads(out)["codim"])
    assert outs[0] == outs[1]


def test_lattice_census(capsys):
    code, out, _ = run(capsys, "lattice", "Q", "--census", "--json")
    doc = json.loads(out)
    assert doc["flats_per_rank"] == [1, 63, 399, 1]
    assert doc["census"]["2"] == {"A2": 336, "G(4,2,2)": 63}


def test_gs(capsys):
    code, out, _ = run(capsys, "gs", "A3", "--star", "1,-1,0,0;1,0,-1,0;0,1,-1,0", "--json")
    assert code == 0
    sizes = json.loads(out)["sizes"]
    assert sizes["Delta"] == 0 and sizes["Lambda"] == 0 and sizes["Gamma_a"] == 1
    code, out, _ = run(capsys, "gs", "S1", "--all")
    assert code == 0


def test_family_and_catalog(capsys):
    code, out, _ = run(capsys, "family", "C3", "triv", "3", "--json")
    doc = json.loads(out)
    assert doc["order"] == 54 and doc["lines"] == 9 and "poincare" not in doc
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "U: 165 lines in dimension 5" in out


def test_json_is_byte_deterministic(capsys):
    a = run(capsys, "lattice", "G333", "--census", "--json")[1]
    b = run(capsys, "lattice", "G333", "--census", "--json", "--no-cache")[1]
    assert a == b


@pytest.mark.parametrize("argv,code", [
    (["lines", "nope"], 2),
    (["codim", "Q", "--method", "formula"], 2),
    (["family", "C5", "index2", "2"], 2),
    (["poincare", "S1", "--method", "delres"], 3),
    (["verify", "--perturb", "no.such.record"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_usage_error_from_argparse(capsys):
    with pytest.raises(SystemExit) as e:
        main(["lattice"])
    assert e.value.code == 2


def test_verify_fast_and_perturbed(capsys):
    code, out, _ = run(capsys, "verify", "--only", "^(G333|A3|Q)\\.")
    assert code == 0 and "0 failed" in out
    code, out, _ = run(capsys, "verify", "--perturb", "G333.mu", "--only", "G333")
    assert code == 1 and "FAIL G333.mu" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--only", "^A3\\.", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["failed"] == 0 and doc["checked"] == 2
