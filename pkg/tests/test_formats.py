import json
import random

import pytest

import oracles
from gallai import (
    ColoringDocument,
    EdgeColoring,
    FormatError,
    canonical_digest,
    parse_json,
    parse_text,
    read_document,
    render_json,
    render_text,
    write_document,
)


def round_trip_text(doc):
    return parse_text(render_text(doc))


def round_trip_json(doc):
    return parse_json(render_json(doc))


def test_pentagon_text_round_trip(pentagon):
    doc = ColoringDocument.sealed(pentagon, provenance={"kind": "handmade"})
    back = round_trip_text(doc)
    assert back.coloring == pentagon
    assert back.digest == canonical_digest(pentagon)
    assert back.provenance == {"kind": "handmade"}


def test_base14_both_formats(base14):
    doc = ColoringDocument.sealed(base14)
    assert round_trip_text(doc).coloring == base14
    assert round_trip_json(doc).coloring == base14


def test_text_layout_is_stable(pentagon):
    text = render_text(ColoringDocument(pentagon))
    lines = text.splitlines()
    assert lines[0].startswith("#")
    assert lines[1] == "5 2"
    assert lines[2] == "1 2 2 1"
    assert lines[3] == "1 2 2"
    assert lines[4] == "1 2"
    assert lines[5] == "1"


def test_single_vertex_has_no_rows():
    doc = ColoringDocument.sealed(EdgeColoring(1, 1, []))
    assert round_trip_text(doc).coloring.n == 1
    assert round_trip_json(doc).coloring.n == 1


def test_fuzz_round_trips_both_formats():
    rng = random.Random(2024)
    for trial in range(1000):
        n = rng.randint(1, 12)
        k = rng.randint(1, 5)
        c = oracles.arbitrary_coloring(n, k, seed=rng.randint(0, 10**9))
        prov = {"kind": "fuzz", "trial": trial} if trial % 3 == 0 else None
        doc = ColoringDocument.sealed(c, provenance=prov)
        for back in (round_trip_text(doc), round_trip_json(doc)):
            assert back.coloring == c
            assert back.digest == doc.digest
            assert back.provenance == prov


def test_comments_and_blank_lines_tolerated():
    ok = "# note\n\n3 2\n# between\n1 2   # inline tail dropped\n\n1\n"
    doc = parse_text(ok)
    assert doc.coloring.n == 3
    assert doc.coloring.color_of(0, 2) == 2
    assert doc.digest is None and doc.provenance is None


@pytest.mark.parametrize(
    "text",
    [
        "",
        "3\n1 2\n1\n",
        "3 2 9\n1 2\n1\n",
        "x y\n1 2\n1\n",
        "0 2\n",
        "3 0\n1 2\n1\n",
        "3 2\n1 2\n",  # missing row
        "3 2\n1 2\n1\n1\n",  # extra row
        "3 2\n1 2 2\n1\n",  # row too wide
        "3 2\n1\n1\n",  # row too narrow
        "3 2\n1 q\n1\n",
        "3 2\n1 3\n1\n",  # color above k
        "3 2\n1 0\n1\n",  # color below 1
        "3 2\n# digest: deadbeef\n1 2\n1\n",  # wrong digest
        "3 2\n# digest: x\n# digest: x\n1 2\n1\n",
        "3 2\n# provenance: [1, 2]\n1 2\n1\n",  # not an object
        "3 2\n# provenance: {broken\n1 2\n1\n",
        "3 2\n# provenance: {}\n# provenance: {}\n1 2\n1\n",
    ],
)
def test_malformed_text_rejected(text):
    with pytest.raises(FormatError):
        parse_text(text)


def sealed_payload(pentagon, **overrides):
    payload = render_json(ColoringDocument.sealed(pentagon))
    payload.update(overrides)
    return payload


@pytest.mark.parametrize(
    "overrides",
    [
        {"format": "something-else"},
        {"version": 2},
        {"n": 0},
        {"k": 0},
        {"edges": []},
        {"edges": "nope"},
        {"digest": "00" * 32},
        {"provenance": "a string"},
    ],
)
def test_malformed_json_rejected(pentagon, overrides):
    with pytest.raises(FormatError):
        parse_json(sealed_payload(pentagon, **overrides))


def test_json_edge_list_must_cover_each_edge_once(pentagon):
    payload = render_json(ColoringDocument(pentagon))
    edges = payload["edges"]
    with pytest.raises(FormatError):
        parse_json({**payload, "edges": edges[:-1] + [edges[0]]})  # duplicate
    with pytest.raises(FormatError):
        parse_json({**payload, "edges": edges[:-1]})  # one missing
    flipped = [[v, u, c] for u, v, c in edges]
    with pytest.raises(FormatError):
        parse_json({**payload, "edges": flipped})  # misordered endpoints


def test_json_top_level_must_be_object():
    with pytest.raises(FormatError):
        parse_json("[]")
    with pytest.raises(FormatError):
        parse_json("{nope")


def test_parse_json_accepts_string_or_dict(pentagon):
    payload = render_json(ColoringDocument.sealed(pentagon))
    assert parse_json(payload).coloring == pentagon
    assert parse_json(json.dumps(payload)).coloring == pentagon


def test_read_write_extension_sniffing(tmp_path, pentagon):
    doc = ColoringDocument.sealed(pentagon)
    grc = tmp_path / "a.grc"
    jsn = tmp_path / "a.json"
    write_document(grc, doc)
    write_document(jsn, doc)
    assert grc.read_text().startswith("#")
    assert jsn.read_text().startswith("{")
    assert read_document(grc).coloring == pentagon
    assert read_document(jsn).coloring == pentagon
    # explicit fmt wins over extension
    odd = tmp_path / "a.dat"
    write_document(odd, doc, fmt="json")
    assert read_document(odd, fmt="json").coloring == pentagon
    with pytest.raises(FormatError):
        read_document(odd)  # sniffed as text
    with pytest.raises(FormatError):
        write_document(odd, doc, fmt="xml")


def test_digest_tamper_detected(tmp_path, base14):
    path = tmp_path / "b.grc"
    write_document(path, ColoringDocument.sealed(base14))
    lines = path.read_text().splitlines()
    row = lines[-1].split()
    row[0] = "2" if row[0] == "1" else "1"
    lines[-1] = " ".join(row)
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(FormatError):
        read_document(path)


def test_document_constructor_validates_digest(pentagon):
    with pytest.raises(FormatError):
        ColoringDocument(pentagon, digest="f" * 64)
    sealed = ColoringDocument.sealed(pentagon)
    assert sealed.digest == canonical_digest(pentagon)
