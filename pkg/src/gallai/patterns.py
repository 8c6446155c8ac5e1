"""Target subgraph patterns and embedding certificates.

A :class:`PatternSpec` names a small graph to look for inside one color
class: wheels, the 3-vertex path, the 4-cycle, cliques, or an explicit
edge list.  An :class:`Embedding` is a checkable certificate that a
pattern occurs at specific host vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Iterable, Optional

if TYPE_CHECKING:
    from .coloring import EdgeColoring

__all__ = ["PatternSpec", "Embedding"]

_EXPLICIT_MAX = 8


def _normalize_edges(order: int, edges: Iterable[tuple[int, int]]):
    seen = set()
    out = []
    for u, v in edges:
        if u == v:
            raise ValueError(f"pattern edge ({u},{v}) is a loop")
        if u > v:
            u, v = v, u
        if not (0 <= u and v < order):
            raise ValueError(f"pattern edge ({u},{v}) out of range for order {order}")
        if (u, v) in seen:
            raise ValueError(f"duplicate pattern edge ({u},{v})")
        seen.add((u, v))
        out.append((u, v))
    return tuple(sorted(out))


def _is_connected(order: int, edges: tuple[tuple[int, int], ...]) -> bool:
    parent = list(range(order))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(x) for x in range(order)}) == 1


@dataclass(frozen=True)
class PatternSpec:
    """A small target graph on vertices 0..order-1.

    ``kind`` is one of ``wheel``, ``path3``, ``cycle4``, ``clique``,
    ``explicit``.  Wheels place the rim on 0..m-1 (in cycle order) and
    the hub on vertex m.  Use the classmethod constructors; they pin
    the vertex conventions the detectors rely on.
    """

    kind: str
    order: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def wheel(cls, m: int) -> "PatternSpec":
        """Wheel with an m-vertex rim cycle plus a hub joined to all of it."""
        if m < 3:
            raise ValueError(f"wheel rim needs at least 3 vertices, got {m}")
        rim = [(i, (i + 1) % m) for i in range(m)]
        spokes = [(i, m) for i in range(m)]
        return cls("wheel", m + 1, _normalize_edges(m + 1, rim + spokes))

    @classmethod
    def path3(cls) -> "PatternSpec":
        return cls("path3", 3, ((0, 1), (1, 2)))

    @classmethod
    def cycle4(cls) -> "PatternSpec":
        return cls("cycle4", 4, ((0, 1), (0, 3), (1, 2), (2, 3)))

    @classmethod
    def clique(cls, t: int) -> "PatternSpec":
        if t < 2:
            raise ValueError(f"clique needs at least 2 vertices, got {t}")
        edges = [(u, v) for u in range(t) for v in range(u + 1, t)]
        return cls("clique", t, tuple(edges))

    @classmethod
    def explicit(cls, order: int, edges: Iterable[tuple[int, int]]) -> "PatternSpec":
        """Arbitrary connected pattern on at most 8 vertices."""
        if not 2 <= order <= _EXPLICIT_MAX:
            raise ValueError(f"explicit pattern order must be 2..{_EXPLICIT_MAX}")
        norm = _normalize_edges(order, edges)
        if not _is_connected(order, norm):
            raise ValueError("explicit pattern must be connected")
        return cls("explicit", order, norm)

    @property
    def label(self) -> str:
        if self.kind == "wheel":
            return f"wheel:{self.order - 1}"
        if self.kind == "path3":
            return "p3"
        if self.kind == "cycle4":
            return "c4"
        if self.kind == "clique":
            return f"kt:{self.order}"
        return "explicit"

    def to_json(self) -> dict[str, Any]:
        if self.kind == "wheel":
            return {"kind": "wheel", "m": self.order - 1}
        if self.kind == "clique":
            return {"kind": "clique", "t": self.order}
        if self.kind in ("path3", "cycle4"):
            return {"kind": self.kind}
        return {
            "kind": "explicit",
            "order": self.order,
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "PatternSpec":
        kind = data.get("kind")
        if kind == "wheel":
            return cls.wheel(int(data["m"]))
        if kind == "clique":
            return cls.clique(int(data["t"]))
        if kind == "path3":
            return cls.path3()
        if kind == "cycle4":
            return cls.cycle4()
        if kind == "explicit":
            return cls.explicit(
                int(data["order"]), [(int(u), int(v)) for u, v in data["edges"]]
            )
        raise ValueError(f"unknown pattern kind {kind!r}")


@dataclass(frozen=True)
class Embedding:
    """Where a pattern sits in a host coloring.

    ``vertex_map[i]`` is the host vertex playing pattern vertex i.
    ``color`` is the color class containing every pattern edge, or None
    for the rainbow-triangle certificate (pattern K3, three distinct
    edge colors).
    """

    pattern: PatternSpec
    color: Optional[int]
    vertex_map: tuple[int, ...]

    def check(self, c: "EdgeColoring") -> bool:
        """Re-validate against the host from scratch."""
        vm = self.vertex_map
        if len(vm) != self.pattern.order or len(set(vm)) != len(vm):
            return False
        if any(not 0 <= x < c.n for x in vm):
            return False
        if self.color is None:
            if self.pattern.order != 3 or len(self.pattern.edges) != 3:
                return False
            found = {c.color_of(vm[u], vm[v]) for u, v in self.pattern.edges}
            return len(found) == 3
        return all(
            c.color_of(vm[u], vm[v]) == self.color for u, v in self.pattern.edges
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "pattern": self.pattern.to_json(),
            "color": self.color,
            "vertices": list(self.vertex_map),
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Embedding":
        color = data.get("color")
        return cls(
            pattern=PatternSpec.from_json(data["pattern"]),
            color=None if color is None else int(color),
            vertex_map=tuple(int(x) for x in data["vertices"]),
        )
