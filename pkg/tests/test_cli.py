"""Tests for the agrs command-line interface."""

import json

import pytest

from src.cli import EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, main


@pytest.fixture
def write_catalog(tmp_path, capsys):
    """Run ``agrs catalog`` and save its output to a file."""

    def _write(*args: str) -> str:
        assert main(["catalog", *args]) == EXIT_OK
        path = tmp_path / f"{len(list(tmp_path.iterdir()))}.json"
        path.write_text(capsys.readouterr().out, encoding="utf-8")
        return str(path)

    return _write


def _doc(tmp_path, name: str, data: dict) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def test_catalog_twisted_over_base(capsys):
    """--twist 3 over G_2 should write D_4^(3)."""
    assert main(["catalog", "G_2", "--twist", "3"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["kind"] == "affine"
    assert data["metadata"] == {"tag": "D_4^(3)"}


def test_catalog_by_family(capsys):
    """A family with parameters works like a label."""
    assert main(["catalog", "--family", "quotient", "--n", "2", "--q", "2/3"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["metadata"]["tag"] == "A~(2,2)^(1)_(1/3)"


def test_catalog_rejects_unknown_labels(capsys):
    """Unknown types exit with the input error code."""
    assert main(["catalog", "X_9"]) == EXIT_INPUT
    assert "error:" in capsys.readouterr().err
    assert main(["catalog", "A_2^(1)", "--twist", "2"]) == EXIT_INPUT


@pytest.mark.parametrize("label", ["B(1,1)", "C(1,1)", "A_2^(2)", "C(1,1)^(1/3)"])
def test_verify_catalog_documents(write_catalog, capsys, label):
    """Catalog documents verify with exit code 0."""
    path = write_catalog(label)
    assert main(["verify", path]) == EXIT_OK
    assert "yes" in capsys.readouterr().out


def test_verify_reports_kernel_violation(tmp_path, capsys):
    """A fiber over the zero class puts δ among the roots."""
    path = _doc(
        tmp_path,
        "kernel.json",
        {
            "kind": "affine",
            "space": {"dim": 1, "basis_labels": ["a"], "gram": [[2]]},
            "fibers": [
                {"class": [0], "step": 1, "residues": [0]},
                {"class": [1], "step": 1, "residues": [0]},
                {"class": [-1], "step": 1, "residues": [0]},
            ],
        },
    )
    assert main(["verify", path]) == EXIT_NEGATIVE
    assert "(0')" in capsys.readouterr().out


def test_verify_rejects_broken_documents(tmp_path, capsys):
    """Unparsable documents exit with the input error code."""
    path = tmp_path / "broken.json"
    path.write_text("{ not json", encoding="utf-8")
    assert main(["verify", str(path)]) == EXIT_INPUT
    assert "line 1" in capsys.readouterr().err
    assert main(["verify", str(tmp_path / "missing.json")]) == EXIT_INPUT


def test_classify_json(write_catalog, capsys):
    """classify prints the tag and its correspondence row."""
    path = write_catalog("A_2^(1)")
    assert main(["--format", "json", "classify", path]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["tag"] == "A_2^(1)"
    assert payload["row"] == "ARS"


def test_iso_exit_codes(write_catalog, capsys):
    """iso exits 0 for isomorphic documents and 1 otherwise."""
    a2, b2, c2 = write_catalog("A_2"), write_catalog("B_2"), write_catalog("C_2")
    capsys.readouterr()
    assert main(["iso", b2, c2]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "isomorphic"
    assert main(["iso", a2, b2]) == EXIT_NEGATIVE
    assert capsys.readouterr().out.strip() == "not isomorphic"


def test_window_writes_finite_document(write_catalog, capsys):
    """window lists the explicit roots with |offset| <= N."""
    path = write_catalog("A_1^(1)")
    assert main(["window", path, "--n", "1"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["kind"] == "finite"
    assert len(data["roots"]) == 6
    assert data["metadata"] == {"window": "1"}


def test_window_needs_affine_document(write_catalog):
    """A finite document has no window."""
    assert main(["window", write_catalog("A_2"), "--n", "1"]) == EXIT_INPUT


def test_parity_json(write_catalog, capsys):
    """B(0,1) has two parity functions."""
    path = write_catalog("B(0,1)")
    assert main(["--format", "json", "parity", path]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["count"] == 2
    assert payload["enumerated"]
    assert len(payload["default_odd"]) == 2


def test_reflect_and_orbits(write_catalog, capsys):
    """r_α1(α2) = α1 + α2 in A_2, whose roots form a single orbit."""
    path = write_catalog("A_2")
    assert main(["--format", "json", "reflect", path, "--alpha", "4", "--beta", "3"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["index"] == 5
    assert main(["--format", "json", "orbits", path]) == EXIT_OK
    assert len(json.loads(capsys.readouterr().out)) == 1
    assert main(["reflect", path, "--alpha", "9", "--beta", "0"]) == EXIT_INPUT


def test_subsystem_command(write_catalog, capsys):
    """±α1 is an A_1 inside A_2; α1 and α2 alone are not a system."""
    path = write_catalog("A_2")
    assert main(["--format", "json", "subsystem", path, "--roots", "1,4"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["type"] == "A_1"
    assert payload["menu"] is not None
    assert main(["subsystem", path, "--roots", "3,4"]) == EXIT_NEGATIVE
    assert "not a system" in capsys.readouterr().out


def test_decompose_writes_components(tmp_path, capsys):
    """A1 × A1 splits into two component files."""
    path = _doc(
        tmp_path,
        "a1a1.json",
        {
            "kind": "finite",
            "space": {"dim": 2, "basis_labels": ["x", "y"], "gram": [[2, 0], [0, 2]]},
            "roots": [[1, 0], [-1, 0], [0, 1], [0, -1]],
        },
    )
    out = tmp_path / "parts"
    assert main(["decompose", path, "--out", str(out)]) == EXIT_OK
    assert sorted(p.name for p in out.iterdir()) == ["component-001.json", "component-002.json"]
    part = json.loads((out / "component-001.json").read_text(encoding="utf-8"))
    assert len(part["roots"]) == 2


def test_oracle_agrees_with_main_checks(write_catalog, capsys):
    """The hidden oracle command cross-checks small systems."""
    a2, b2 = write_catalog("A_2"), write_catalog("B_2")
    capsys.readouterr()
    assert main(["--format", "json", "oracle", a2, "--against", b2]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["checked"] == 3
    assert payload["mismatches"] == []
