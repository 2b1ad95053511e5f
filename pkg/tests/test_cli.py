"""Command-line behavior: exit codes, output channels, corpus replay."""

import json
import shutil
from fractions import Fraction as F

import pytest

from orbitdeg import cli, corpus
from orbitdeg.series import TruncSeries

CONIC_TEXT = '{"degree": 2, "flexes": 0, "nonlinear": [{"deg": 2, "mult": 1}]}'
LINE_TEXT = '{"degree": 1, "flexes": 0, "linear": [{"mult": 1, "meets": []}]}'


@pytest.fixture
def conic_path(tmp_path):
    path = tmp_path / "conic.json"
    path.write_text(CONIC_TEXT, encoding="utf-8")
    return str(path)


@pytest.fixture
def line_path(tmp_path):
    path = tmp_path / "line.json"
    path.write_text(LINE_TEXT, encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_json_report(capsys, conic_path):
    code, out, err = run(capsys, "compute", conic_path)
    assert code == 0
    report = json.loads(out)
    assert report["predegree"] == "8"
    assert report["orbit_dimension"] == 5
    assert err == ""


def test_compute_pretty_report(capsys, conic_path):
    code, out, _ = run(capsys, "compute", conic_path, "--format", "pretty")
    assert code == 0
    assert "orbit dimension: 5" in out


def test_compute_expect_dimension_warning(capsys, conic_path):
    code, out, err = run(capsys, "compute", conic_path, "--expect-dimension", "8")
    assert code == 0
    assert "warning" in err
    json.loads(out)  # stdout still carries only the report


def test_compute_missing_file(capsys, tmp_path):
    code, out, err = run(capsys, "compute", str(tmp_path / "nope.json"))
    assert code == 2
    assert out == ""
    assert "error" in err


def test_compute_malformed_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    code, _, err = run(capsys, "compute", str(path))
    assert code == 2
    assert "line 1" in err


def test_compute_schema_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"degree": "4"}', encoding="utf-8")
    code, _, err = run(capsys, "compute", str(path))
    assert code == 2
    assert "expected an integer" in err


def test_compute_validation_failure(capsys, tmp_path):
    path = tmp_path / "invalid.json"
    path.write_text('{"degree": 3, "nonlinear": [{"deg": 2, "mult": 1}]}', encoding="utf-8")
    code, out, err = run(capsys, "compute", str(path))
    assert code == 1
    assert out == ""
    assert "invalid" in err


def test_contribution_truncation(capsys):
    code, out, _ = run(capsys, "contribution", "type5", "--ell", "1", "--W", "5", "--s", "1,1")
    assert code == 0
    payload = json.loads(out)
    assert payload["term"] == ["0", "0", "0", "0", "0", "0", "-5/6", "31/14", "-3"]


def test_contribution_irreducible(capsys):
    code, out, _ = run(capsys, "contribution", "irreducible", "--m", "2", "--n", "3", "--essential", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["absorbs"] == 8
    assert TruncSeries.from_strings(payload["factor"]) == TruncSeries.from_terms(
        {0: 1, 6: F(-4, 15), 7: F(3, 5), 8: F(-19, 28)}
    )


def test_contribution_tangent_cone_two_lines(capsys):
    code, out, _ = run(capsys, "contribution", "type3", "--lines", "1,1")
    assert code == 0
    assert json.loads(out)["term"] == ["0"] * 9


def test_contribution_precondition_failure(capsys):
    code, _, err = run(capsys, "contribution", "irreducible", "--m", "2", "--n", "4", "--essential", "6")
    assert code == 1
    assert "essential" in err


def test_contribution_missing_flag(capsys):
    code, _, err = run(capsys, "contribution", "type5", "--ell", "1")
    assert code == 1
    assert "missing" in err


def test_newton_command(capsys, tmp_path):
    path = tmp_path / "support.json"
    path.write_text(
        json.dumps(
            {"degree": 4, "terms": [[4, 0, "1"], [2, 1, "-2"], [0, 2, "1"], [3, 1, "-1"]]}
        ),
        encoding="utf-8",
    )
    code, out, _ = run(capsys, "newton", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["polygon"]["vertices"] == [[0, 2], [4, 0]]
    assert payload["multiplicity"] == 2
    assert payload["contact"] == 4
    [side] = payload["sides"]
    assert side["span"] == 2
    assert side["coefficients"] == ["1", "-2", "1"]
    assert side["s"] == [2]


def test_union_command(capsys, conic_path, line_path):
    code, out, _ = run(
        capsys, "union", conic_path, line_path, "--line-crossings", "2", "--stabilizer", "4"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["degree"] == "21"
    assert payload["orbit_dimension"] == 7


def test_scale_command(capsys, line_path):
    code, out, _ = run(capsys, "scale", line_path, "--multiple", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["app"][:3] == ["1", "2", "2"]
    assert payload["orbit_dimension"] == 2


def test_compute_strict_erratum_notes(capsys, tmp_path):
    path = tmp_path / "quartic.json"
    path.write_text(
        '{"degree": 4, "flexes": "auto", "nonlinear": [{"deg": 4, "mult": 1}]}', encoding="utf-8"
    )
    code, out, _ = run(capsys, "compute", str(path), "--erratum", "strict")
    assert code == 0
    payload = json.loads(out)
    assert payload["erratum_notes"]
    assert payload["predegree"] != "14280"


def test_corpus_all_pass(capsys):
    code, out, _ = run(capsys, "corpus")
    assert code == 0
    assert "24/24 fixtures passed" in out


def test_corpus_env_override(capsys, tmp_path, monkeypatch):
    target = tmp_path / "corpus"
    target.mkdir()
    source = corpus.corpus_dir()
    shutil.copy(source / "smooth-conic.json", target / "smooth-conic.json")
    monkeypatch.setenv(corpus.ENV_CORPUS_DIR, str(target))
    code, out, _ = run(capsys, "corpus")
    assert code == 0
    assert "1/1 fixtures passed" in out


def test_corpus_detects_perturbed_expectation(capsys, tmp_path):
    target = tmp_path / "corpus"
    shutil.copytree(corpus.corpus_dir(), target)
    path = target / "smooth-quartic.json"
    data = json.loads(path.read_text(encoding="utf-8"))
    data["expected"]["predegree"] = "14281"
    path.write_text(json.dumps(data), encoding="utf-8")
    code, out, _ = run(capsys, "corpus", "--dir", str(target))
    assert code == 1
    assert "smooth-quartic" in out
    assert "expected 14281" in out


def test_corpus_strict_erratum_fails_nodal_quartic(capsys):
    code, out, _ = run(capsys, "corpus", "--erratum", "strict")
    assert code == 1
    lines = [line for line in out.splitlines() if line.startswith("nodal-quartic ")]
    assert lines and "FAIL" in lines[0]


def test_corpus_missing_dir(capsys, tmp_path):
    code, _, err = run(capsys, "corpus", "--dir", str(tmp_path / "missing"))
    assert code == 2
    assert "not found" in err
