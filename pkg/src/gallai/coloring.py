"""Edge-colored complete graphs.

The central object is :class:`EdgeColoring`: a complete graph on
vertices ``0..n-1`` whose edges each carry one color from a declared
palette ``1..k``.  Colorings are immutable; the construction operators
(`restrict`, `join`, `substitute`, `recolor`) return new objects.

Vertex labels are significant.  Two colorings are equal only if they
agree edge by edge, and `canonical_digest` hashes the labeled object.
"""

from __future__ import annotations

import hashlib
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "EdgeColoring",
    "edge_index",
    "restrict",
    "join",
    "substitute",
    "recolor",
    "canonical_digest",
]

_DIGEST_HEADER = "grc1"


def edge_index(n: int, u: int, v: int) -> int:
    """Position of edge (u, v), u < v, in row-major upper-triangular order.

    Row u lists edges (u, u+1), (u, u+2), ..., (u, n-1).
    """
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


class EdgeColoring:
    """An edge coloring of the complete graph K_n with palette 1..k.

    ``colors`` lists edge colors in row-major upper-triangular order,
    the same order `edges()` iterates in.  The declared palette may be
    wider than the set of colors actually used; `colors_used()` reports
    the latter.

    Per-color adjacency is exposed as vertex bitmasks via `neighbors`,
    which is what every detector in this package is built on.
    """

    __slots__ = ("n", "k", "_colors", "_masks")

    def __init__(self, n: int, k: int, colors: Sequence[int]):
        if n < 1:
            raise ValueError(f"need at least one vertex, got n={n}")
        if k < 1:
            raise ValueError(f"palette must have at least one color, got k={k}")
        m = n * (n - 1) // 2
        colors = tuple(colors)
        if len(colors) != m:
            raise ValueError(f"expected {m} edge colors for n={n}, got {len(colors)}")
        masks: dict[int, list[int]] = {}
        i = 0
        for u in range(n):
            bit_u = 1 << u
            for v in range(u + 1, n):
                c = colors[i]
                i += 1
                if not (1 <= c <= k) or not isinstance(c, int):
                    raise ValueError(f"edge ({u},{v}) has color {c!r}, outside 1..{k}")
                row = masks.get(c)
                if row is None:
                    row = masks[c] = [0] * n
                row[u] |= 1 << v
                row[v] |= bit_u
        self.n = n
        self.k = k
        self._colors = colors
        self._masks = masks

    # -- basic queries -------------------------------------------------

    def color_of(self, u: int, v: int) -> int:
        if u == v:
            raise ValueError(f"no self-loop at vertex {u}")
        if u > v:
            u, v = v, u
        if u < 0 or v >= self.n:
            raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
        return self._colors[edge_index(self.n, u, v)]

    def neighbors(self, color: int, v: int) -> int:
        """Bitmask of vertices joined to v by an edge of the given color."""
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")
        row = self._masks.get(color)
        return row[v] if row is not None else 0

    def colors_used(self) -> frozenset[int]:
        return frozenset(self._masks)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield (u, v, color) with u < v, ascending in (u, v)."""
        i = 0
        colors = self._colors
        for u in range(self.n):
            for v in range(u + 1, self.n):
                yield u, v, colors[i]
                i += 1

    @property
    def edge_colors(self) -> tuple[int, ...]:
        return self._colors

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeColoring):
            return NotImplemented
        return (
            self.n == other.n and self.k == other.k and self._colors == other._colors
        )

    def __hash__(self) -> int:
        return hash((self.n, self.k, self._colors))

    def __repr__(self) -> str:
        return f"EdgeColoring(n={self.n}, k={self.k})"


def _vertex_list(c: EdgeColoring, vertices: Iterable[int]) -> list[int]:
    vs = sorted(set(vertices))
    if not vs:
        raise ValueError("vertex set must be nonempty")
    if vs[0] < 0 or vs[-1] >= c.n:
        raise ValueError(f"vertex set {vs} not contained in 0..{c.n - 1}")
    return vs


def restrict(c: EdgeColoring, vertices: Iterable[int]) -> EdgeColoring:
    """Induced subcoloring on the given vertices, relabeled 0..len-1.

    Relabeling preserves the ascending order of the chosen vertices.
    The declared palette is kept even if fewer colors survive.
    """
    vs = _vertex_list(c, vertices)
    out = [c.color_of(u, v) for i, u in enumerate(vs) for v in vs[i + 1 :]]
    return EdgeColoring(len(vs), c.k, out)


def join(c1: EdgeColoring, c2: EdgeColoring, fresh_color: int) -> EdgeColoring:
    """Disjoint union of c1 and c2 with every cross edge in a fresh color.

    The second operand is shifted up by c1.n.  ``fresh_color`` must not
    occur in either operand; reusing a color would merge structure
    across the two halves and is rejected.
    """
    if fresh_color < 1:
        raise ValueError(f"colors are positive, got {fresh_color}")
    if fresh_color in c1.colors_used() or fresh_color in c2.colors_used():
        raise ValueError(f"color {fresh_color} already used by an operand")
    n1, n2 = c1.n, c2.n
    n = n1 + n2
    k = max(c1.k, c2.k, fresh_color)
    out = []
    for u in range(n1):
        for v in range(u + 1, n1):
            out.append(c1.color_of(u, v))
        out.extend([fresh_color] * n2)
    out.extend(c2.edge_colors)
    return EdgeColoring(n, k, out)


def substitute(
    quotient: EdgeColoring,
    parts: Sequence[EdgeColoring],
    strict: bool = False,
) -> EdgeColoring:
    """Blow up each quotient vertex i into the coloring parts[i].

    Edges inside part i keep their color; edges between parts i and j
    all take the quotient color of (i, j).  With ``strict=True`` the
    quotient colors must be disjoint from all part colors, so that the
    block structure stays recoverable from the result.
    """
    p = quotient.n
    if len(parts) != p:
        raise ValueError(f"quotient has {p} vertices but {len(parts)} parts given")
    if strict:
        cross = quotient.colors_used()
        for i, part in enumerate(parts):
            shared = cross & part.colors_used()
            if shared:
                raise ValueError(f"part {i} reuses quotient colors {sorted(shared)}")
    sizes = [part.n for part in parts]
    offsets = [0] * p
    for i in range(1, p):
        offsets[i] = offsets[i - 1] + sizes[i - 1]
    n = offsets[-1] + sizes[-1]
    k = max(quotient.k, max(part.k for part in parts))
    out = [0] * (n * (n - 1) // 2)
    for i, part in enumerate(parts):
        base = offsets[i]
        for u, v, c in part.edges():
            out[edge_index(n, base + u, base + v)] = c
    for i in range(p):
        for j in range(i + 1, p):
            c = quotient.color_of(i, j)
            for u in range(offsets[i], offsets[i] + sizes[i]):
                row = edge_index(n, u, offsets[j])
                for t in range(sizes[j]):
                    out[row + t] = c
    return EdgeColoring(n, k, out)


def recolor(
    c: EdgeColoring, mapping: Mapping[int, int], k: int | None = None
) -> EdgeColoring:
    """Rename colors through ``mapping``; colors not mapped are kept.

    ``k`` sets the declared palette of the result and defaults to the
    smallest palette containing every resulting color and c.k.
    """
    out = [mapping.get(col, col) for col in c.edge_colors]
    if any(col < 1 for col in out):
        raise ValueError("recoloring must keep colors positive")
    if k is None:
        k = max(c.k, max(out, default=1))
    return EdgeColoring(c.n, k, out)


def canonical_digest(c: EdgeColoring) -> str:
    """SHA-256 hex digest of the labeled coloring.

    Stable across processes and releases: hashes the versioned text
    ``grc1\\n{n} {k}\\n{edge colors in row-major order}``.  Vertex
    labels matter; isomorphic but differently labeled colorings hash
    differently.
    """
    body = f"{_DIGEST_HEADER}\n{c.n} {c.k}\n" + " ".join(map(str, c.edge_colors))
    return hashlib.sha256(body.encode("ascii")).hexdigest()
