"""Reading and writing colorings: text rows and a JSON mirror.

Text format (extension ``.grc``)::

    # free-form comments start with '#'
    n k
    <n-1 colors>      row for vertex 0: edges (0,1) .. (0,n-1)
    <n-2 colors>      row for vertex 1: edges (1,2) .. (1,n-1)
    ...
    <1 color>         row for vertex n-2: edge (n-2, n-1)
    # digest: <sha256 of the payload>
    # provenance: <one-line JSON>

The ``digest:`` and ``provenance:`` comments are structured: they are
parsed back, so documents round-trip losslessly.  The JSON mirror
carries the same payload as explicit ``[u, v, color]`` triples.

Any malformed input raises :class:`FormatError`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Union

from .coloring import EdgeColoring, canonical_digest, edge_index

__all__ = [
    "FORMAT_VERSION",
    "FormatError",
    "ColoringDocument",
    "render_text",
    "parse_text",
    "render_json",
    "parse_json",
    "read_document",
    "write_document",
]

FORMAT_VERSION = 1


class FormatError(ValueError):
    """Input that does not satisfy the documented file format."""


@dataclass(frozen=True)
class ColoringDocument:
    """A coloring plus optional integrity digest and provenance record.

    ``provenance`` is an opaque JSON-able dict (a construction trace or
    a search task reference).  When ``digest`` is set it must match the
    payload; the constructor enforces this.
    """

    coloring: EdgeColoring
    digest: Optional[str] = None
    provenance: Optional[dict[str, Any]] = None
    version: int = FORMAT_VERSION

    def __post_init__(self) -> None:
        if self.version != FORMAT_VERSION:
            raise FormatError(f"unsupported format version {self.version}")
        if self.digest is not None and self.digest != canonical_digest(self.coloring):
            raise FormatError("digest does not match payload")

    @classmethod
    def sealed(
        cls, coloring: EdgeColoring, provenance: Optional[dict[str, Any]] = None
    ) -> "ColoringDocument":
        """Document with the digest filled in."""
        return cls(coloring, canonical_digest(coloring), provenance)


def render_text(doc: ColoringDocument) -> str:
    c = doc.coloring
    lines = [f"# gallai coloring v{doc.version}", f"{c.n} {c.k}"]
    colors = c.edge_colors
    pos = 0
    for u in range(c.n - 1):
        width = c.n - 1 - u
        lines.append(" ".join(map(str, colors[pos : pos + width])))
        pos += width
    if doc.digest is not None:
        lines.append(f"# digest: {doc.digest}")
    if doc.provenance is not None:
        blob = json.dumps(doc.provenance, sort_keys=True, separators=(",", ":"))
        lines.append(f"# provenance: {blob}")
    return "\n".join(lines) + "\n"


def _int_tokens(line: str, lineno: int) -> list[int]:
    out = []
    for tok in line.split():
        try:
            out.append(int(tok))
        except ValueError:
            raise FormatError(f"line {lineno}: {tok!r} is not an integer") from None
    return out


def parse_text(text: str) -> ColoringDocument:
    digest: Optional[str] = None
    provenance: Optional[dict[str, Any]] = None
    data_lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if body.startswith("digest:"):
                if digest is not None:
                    raise FormatError(f"line {lineno}: duplicate digest comment")
                digest = body[len("digest:") :].strip()
            elif body.startswith("provenance:"):
                if provenance is not None:
                    raise FormatError(f"line {lineno}: duplicate provenance comment")
                blob = body[len("provenance:") :].strip()
                try:
                    provenance = json.loads(blob)
                except json.JSONDecodeError as exc:
                    raise FormatError(f"line {lineno}: bad provenance JSON") from exc
                if not isinstance(provenance, dict):
                    raise FormatError(f"line {lineno}: provenance must be an object")
            continue
        data = raw.split("#", 1)[0].strip()
        if data:
            data_lines.append((lineno, data))
    if not data_lines:
        raise FormatError("no header line")
    head_no, head = data_lines[0]
    dims = _int_tokens(head, head_no)
    if len(dims) != 2:
        raise FormatError(f"line {head_no}: header must be 'n k'")
    n, k = dims
    if n < 1 or k < 1:
        raise FormatError(f"line {head_no}: need n >= 1 and k >= 1, got {n} {k}")
    rows = data_lines[1:]
    if len(rows) != max(n - 1, 0):
        raise FormatError(f"expected {n - 1} rows of colors, found {len(rows)}")
    colors: list[int] = []
    for u, (lineno, line) in enumerate(rows):
        vals = _int_tokens(line, lineno)
        if len(vals) != n - 1 - u:
            raise FormatError(
                f"line {lineno}: row {u} must list {n - 1 - u} colors, got {len(vals)}"
            )
        colors.extend(vals)
    try:
        coloring = EdgeColoring(n, k, colors)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if digest is not None and digest != canonical_digest(coloring):
        raise FormatError("digest comment does not match payload")
    return ColoringDocument(coloring, digest, provenance)


def render_json(doc: ColoringDocument) -> dict[str, Any]:
    c = doc.coloring
    return {
        "format": "gallai-coloring",
        "version": doc.version,
        "n": c.n,
        "k": c.k,
        "edges": [[u, v, col] for u, v, col in c.edges()],
        "digest": doc.digest,
        "provenance": doc.provenance,
    }


def parse_json(data: Union[str, dict[str, Any]]) -> ColoringDocument:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError("top-level JSON value must be an object")
    if data.get("format") != "gallai-coloring":
        raise FormatError("missing or wrong 'format' tag")
    if data.get("version") != FORMAT_VERSION:
        raise FormatError(f"unsupported version {data.get('version')!r}")
    try:
        n = int(data["n"])
        k = int(data["k"])
        edges = data["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed payload: {exc}") from exc
    if n < 1 or k < 1:
        raise FormatError(f"need n >= 1 and k >= 1, got {n} {k}")
    if not isinstance(edges, list):
        raise FormatError("'edges' must be a list")
    m = n * (n - 1) // 2
    colors = [0] * m
    seen = [False] * m
    for item in edges:
        try:
            u, v, col = (int(x) for x in item)
        except (TypeError, ValueError) as exc:
            raise FormatError(f"bad edge entry {item!r}") from exc
        if not (0 <= u < v < n):
            raise FormatError(f"edge ({u},{v}) out of range or misordered")
        idx = edge_index(n, u, v)
        if seen[idx]:
            raise FormatError(f"edge ({u},{v}) listed twice")
        seen[idx] = True
        colors[idx] = col
    if not all(seen):
        raise FormatError(f"edge list incomplete ({m - sum(seen)} edges missing)")
    try:
        coloring = EdgeColoring(n, k, colors)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    digest = data.get("digest")
    if digest is not None and digest != canonical_digest(coloring):
        raise FormatError("digest field does not match payload")
    provenance = data.get("provenance")
    if provenance is not None and not isinstance(provenance, dict):
        raise FormatError("provenance must be an object")
    return ColoringDocument(coloring, digest, provenance)


def _pick_format(path: Union[str, Path], fmt: Optional[str]) -> str:
    if fmt is not None:
        if fmt not in ("grc", "json"):
            raise FormatError(f"unknown format {fmt!r}")
        return fmt
    return "json" if str(path).endswith(".json") else "grc"


def read_document(path: Union[str, Path], fmt: Optional[str] = None) -> ColoringDocument:
    text = Path(path).read_text(encoding="ascii")
    if _pick_format(path, fmt) == "json":
        return parse_json(text)
    return parse_text(text)


def write_document(
    path: Union[str, Path], doc: ColoringDocument, fmt: Optional[str] = None
) -> None:
    if _pick_format(path, fmt) == "json":
        payload = json.dumps(render_json(doc), indent=2, sort_keys=True) + "\n"
    else:
        payload = render_text(doc)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(payload)
