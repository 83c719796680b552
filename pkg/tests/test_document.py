"""Tests for the JSON system document."""

import json

import pytest

from src.errors import DocumentParseError
from src.models.presentation import AffinePresentation
from src.models.space import vector
from src.models.system import FiniteRootSystem
from src.services.document import dump, from_document, load, parse, to_document

A1_DOC = {
    "kind": "finite",
    "space": {"dim": 1, "basis_labels": ["a"], "gram": [[2]]},
    "roots": [[1], [-1]],
}


def test_parse_accepts_integers_as_rationals():
    """Bare integers should be read as rational strings."""
    doc = parse(json.dumps(A1_DOC))
    assert doc.space.gram == [["2"]]
    assert doc.roots == [["1"], ["-1"]]
    assert doc.format_version == "1.0"
    R = from_document(doc)
    assert isinstance(R, FiniteRootSystem)
    assert R.roots == (vector(-1), vector(1))


def test_syntax_error_reports_line_and_column():
    """Malformed JSON should name where parsing stopped."""
    with pytest.raises(DocumentParseError) as info:
        parse('{\n  "kind": "finite",\n  "space": }')
    assert "line 3" in str(info.value)
    assert "column" in str(info.value)


@pytest.mark.parametrize(
    ("patch", "fragment"),
    [
        ({"kind": "both"}, "kind"),
        ({"roots": [["1/0"]]}, "roots.0.0"),
        ({"roots": [[0.5]]}, "roots.0.0"),
        ({"roots": [[1, 2]]}, "coordinates"),
        ({"space": {"dim": 2, "basis_labels": ["a"], "gram": [[2]]}}, "basis_labels"),
        ({"fibers": []}, "no 'fibers'"),
        ({"extra": 1}, "extra"),
    ],
)
def test_schema_errors_name_the_field(patch, fragment):
    """Schema violations should surface as DocumentParseError with a location."""
    with pytest.raises(DocumentParseError) as info:
        parse(json.dumps({**A1_DOC, **patch}))
    assert fragment in str(info.value)


def test_domain_errors_become_parse_errors():
    """Duplicate roots and non-symmetric forms are rejected while building."""
    duplicate = parse(json.dumps({**A1_DOC, "roots": [[1], [1]]}))
    with pytest.raises(DocumentParseError, match="Duplicate"):
        from_document(duplicate)
    skew = {
        "kind": "finite",
        "space": {"dim": 2, "basis_labels": ["a", "b"], "gram": [[1, 1], [0, 1]]},
        "roots": [[1, 0]],
    }
    with pytest.raises(DocumentParseError, match="symmetric"):
        from_document(parse(json.dumps(skew)))


def test_finite_document_round_trip(finite):
    """dump followed by parse should rebuild the same system."""
    R = finite("B(1,1)")
    text = dump(R, {"source": "catalog"})
    assert text.endswith("\n")
    assert from_document(parse(text)) == R
    assert parse(text).metadata == {"source": "catalog"}


def test_affine_document_round_trip(affine):
    """Fibers, steps and the δ label survive serialization."""
    P = affine("C(1,1)^(1/3)")
    doc = to_document(P)
    assert doc.kind == "affine"
    assert doc.roots is None
    data = json.loads(dump(P))
    assert "class" in data["fibers"][0]
    rebuilt = from_document(parse(dump(P)))
    assert isinstance(rebuilt, AffinePresentation)
    assert rebuilt == P


def test_dump_is_stable(finite):
    """Serializing twice gives identical text."""
    R = finite("A_2")
    assert dump(R) == dump(from_document(parse(dump(R))))


def test_load_reads_files(tmp_path, finite):
    """load reads a file and reports unreadable paths."""
    path = tmp_path / "a2.json"
    path.write_text(dump(finite("A_2")), encoding="utf-8")
    assert load(path) == finite("A_2")
    with pytest.raises(DocumentParseError):
        load(tmp_path / "missing.json")
