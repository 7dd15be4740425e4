"""Unit tests for the command-line interface and the report renderers."""

from __future__ import annotations

import json

import pytest

from enriques_cnd.cli import main
from enriques_cnd.datasets import dataset_ids, load_dataset
from enriques_cnd.errors import InternalInvariantError
from enriques_cnd.report import RunOptions, render_text, report_to_dict, run
from enriques_cnd.surface_model import serialize_document


def _strip_timing(payload: dict) -> dict:
    trimmed = dict(payload)
    trimmed.pop("timing", None)
    return trimmed


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------

def test_compute_text_output(capsys):
    assert main(["compute", "mlp2"]) == 0
    out = capsys.readouterr().out
    assert "dataset: mlp2 (12 curves)" in out
    assert "elliptic fibrations: 15" in out
    assert "cnd(S, R) = 5" in out
    assert "nd(S) >= 5" in out
    assert "very ample" not in out
    assert "saturated census:" in out
    assert "timing:" in out


def test_compute_json_payload(tmp_path, capsys):
    target = tmp_path / "report.json"
    assert main(["compute", "mlp2", "--json", str(target)]) == 0
    capsys.readouterr()
    payload = json.loads(target.read_text())
    assert list(payload) == [
        "dataset", "curve_count", "fibrations", "fibration_total", "cnd",
        "nd_statement", "maximal_sequence_count", "saturated", "phi", "timing",
    ]
    assert payload["dataset"] == "mlp2"
    assert payload["curve_count"] == 12
    assert payload["fibration_total"] == 15
    assert payload["cnd"] == 5
    assert payload["nd_statement"] == "nd(S) >= 5"
    assert payload["maximal_sequence_count"] == 3
    a3 = next(f for f in payload["fibrations"] if f["type"] == "1 A3F")
    assert a3["count"] == 4
    assert a3["representative_class"].count("1/2") == 4
    assert all(isinstance(x, (int, str)) for x in a3["representative_class"])


def test_compute_flag_sections(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["compute", "kondo2", "--sequences", "--saturated", "--fano",
                 "--json", str(target)])
    assert code == 0
    out = capsys.readouterr().out
    payload = json.loads(target.read_text())
    assert "sequences" in payload and len(payload["sequences"]) == 1
    assert payload["sequences"][0]["length"] == 7
    assert "saturated_sequences" in payload
    assert len(payload["saturated_sequences"]) == 11
    # --fano implies --extend
    assert payload["extensions"][0]["extension_count"] == 2
    fano = payload["extensions"][0]["extensions"][0]["fano"]
    assert fano["delta_self"] == 10
    assert fano["degrees"] == [3] * 10
    assert fano["singularities"] == ["A1", "A1", "A1"]
    assert "canonical extensions of a length-7 sequence: 2" in out
    assert "Delta^2 = 10" in out


def test_compute_accepts_document_path(tmp_path, capsys):
    data = load_dataset("kondo1")
    doc = tmp_path / "surface.json"
    doc.write_text(json.dumps(serialize_document(data)))
    target = tmp_path / "report.json"
    assert main(["compute", str(doc), "--json", str(target)]) == 0
    capsys.readouterr()
    payload = json.loads(target.read_text())
    assert payload["dataset"] == "kondo1"
    assert payload["cnd"] == 4


def test_compute_is_deterministic_and_thread_independent(tmp_path, capsys):
    payloads = []
    for i, extra in enumerate(([], [], ["--threads", "1"], ["--threads", "2"])):
        target = tmp_path / f"report{i}.json"
        assert main(["compute", "kondo3", "--json", str(target)] + extra) == 0
        payloads.append(_strip_timing(json.loads(target.read_text())))
    capsys.readouterr()
    assert payloads[0] == payloads[1] == payloads[2] == payloads[3]


def test_fast_mode_has_identical_output(tmp_path, capsys):
    plain = tmp_path / "plain.json"
    fast = tmp_path / "fast.json"
    assert main(["compute", "mlp1", "--saturated", "--json", str(plain)]) == 0
    assert main(["compute", "mlp1", "--saturated", "--fast",
                 "--json", str(fast)]) == 0
    capsys.readouterr()
    assert _strip_timing(json.loads(plain.read_text())) == \
        _strip_timing(json.loads(fast.read_text()))


def test_nd_statement_phrasing(reports):
    mlp1 = reports.get("mlp1")
    assert mlp1.nd_statement == "nd(S) >= 8"
    text = render_text(mlp1, RunOptions())
    assert "nd(S) >= 8" in text
    assert "nd(S) = 8" not in text
    for name in dataset_ids():
        report = reports.get(name)
        payload = report_to_dict(report, RunOptions())
        if report.cnd == 10:
            assert payload["very_ample_fano_polarization"] is True
        else:
            assert "very_ample_fano_polarization" not in payload


# ---------------------------------------------------------------------------
# phi
# ---------------------------------------------------------------------------

def test_phi_command(tmp_path, capsys):
    target = tmp_path / "phi.json"
    assert main(["phi", "kondo1", "--json", str(target)]) == 0
    out = capsys.readouterr().out
    assert "phi(sum_of_curves) = 2" in out
    payload = json.loads(target.read_text())
    assert payload == {"dataset": "kondo1", "phi": {"sum_of_curves": 2}}


def test_phi_requires_divisors(tmp_path, capsys):
    doc = serialize_document(load_dataset("mlp2"))
    doc.pop("divisors")
    path = tmp_path / "bare.json"
    path.write_text(json.dumps(doc))
    assert main(["phi", str(path)]) == 1
    err = capsys.readouterr().err
    assert "error: dataset has no divisors" in err


# ---------------------------------------------------------------------------
# overlattice
# ---------------------------------------------------------------------------

def test_overlattice_gram_document(tmp_path, capsys):
    path = tmp_path / "lattice.json"
    path.write_text(json.dumps({"gram": [[2, 0], [0, -2]]}))
    assert main(["overlattice", str(path)]) == 0
    out = capsys.readouterr().out
    assert "discriminant group: order 4 = Z/2 x Z/2" in out
    assert "isotropic classes (excluding 0): 1" in out
    assert "[1/2, 1/2]" in out


def test_overlattice_unimodular(tmp_path, capsys):
    path = tmp_path / "lattice.json"
    path.write_text(json.dumps({"gram": [[0, 1], [1, 0]]}))
    target = tmp_path / "out.json"
    assert main(["overlattice", str(path), "--json", str(target)]) == 0
    out = capsys.readouterr().out
    assert "discriminant group: order 1 (trivial)" in out
    assert "already unimodular; lattice equals the Num(S) candidate" in out
    payload = json.loads(target.read_text())
    assert payload == {"invariant_factors": [], "order": 1, "unimodular": True}


def test_overlattice_generators_document(tmp_path, capsys):
    path = tmp_path / "lattice.json"
    path.write_text(json.dumps({
        "generators": [[1, 0], [0, 1]],
        "intersection_matrix": [[2, 0], [0, -2]],
        "curves": ["u", "v"],
    }))
    target = tmp_path / "out.json"
    assert main(["overlattice", str(path), "--json", str(target)]) == 0
    out = capsys.readouterr().out
    assert "[1/2, 1/2]  =  1/2 u + 1/2 v" in out
    payload = json.loads(target.read_text())
    assert payload["isotropic_classes"] == [{
        "generator_coordinates": ["1/2", "1/2"],
        "curve_coordinates": ["1/2", "1/2"],
    }]


@pytest.mark.parametrize("document,message", [
    ("{broken", "invalid JSON"),
    ("[1, 2]", "must be a JSON object"),
    ('{"foo": 1}', "needs either"),
    ('{"generators": [[1, 0]]}', "requires an 'intersection_matrix'"),
    ('{"generators": [["1/2", 0], [0, 1]], '
     '"intersection_matrix": [[2, 0], [0, 2]]}',
     "not integral at (0,0)"),
    ('{"generators": [[1, 0, 0]], "intersection_matrix": [[2, 0], [0, 2]]}',
     "generator length"),
])
def test_overlattice_rejects_bad_documents(tmp_path, capsys, document, message):
    path = tmp_path / "lattice.json"
    path.write_text(document)
    assert main(["overlattice", str(path)]) == 1
    assert message in capsys.readouterr().err


def test_overlattice_missing_file(capsys):
    assert main(["overlattice", "/nonexistent/lattice.json"]) == 1
    assert "cannot read file" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# list-datasets, errors, exit codes
# ---------------------------------------------------------------------------

def test_list_datasets(capsys):
    assert main(["list-datasets"]) == 0
    out = capsys.readouterr().out
    for name in dataset_ids():
        assert name in out


def test_unknown_dataset_is_an_input_error(capsys):
    assert main(["compute", "no-such-dataset"]) == 1
    err = capsys.readouterr().err
    assert "error: unknown dataset 'no-such-dataset'" in err


def test_internal_error_exit_code(monkeypatch, capsys):
    def boom(data, options):
        raise InternalInvariantError("synthetic failure")

    monkeypatch.setattr("enriques_cnd.cli.run", boom)
    assert main(["compute", "mlp2"]) == 2
    assert "internal error: synthetic failure" in capsys.readouterr().err


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["compute"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["not-a-command"])
    assert info.value.code == 1
    capsys.readouterr()


def test_help_exits_zero(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--help"])
    assert info.value.code == 0
    assert "compute" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# Library-level report checks
# ---------------------------------------------------------------------------

def test_run_report_dict_round_trips_through_json(reports):
    options = RunOptions(sequences=True, saturated=True, fano=True, extend=True)
    report = run(load_dataset("kondo1"), options)
    payload = report_to_dict(report, options)
    assert json.loads(json.dumps(payload)) == payload


def test_census_line_format(reports):
    report = reports.get("mlp2")
    text = render_text(report, RunOptions())
    assert "     4 x (1 A3F)   e.g. 1/2 R1 + 1/2 R2 + 1/2 R3 + 1/2 R6" in text
