"""Detectors: rainbow triangles and monochromatic patterns.

Everything here runs on the per-color adjacency bitmasks kept by
:class:`EdgeColoring`, with small-integer set algebra instead of
explicit subset enumeration.  Scan orders are fixed and documented, so
each detector is deterministic: same input, same certificate.

Detectors return :class:`Embedding` certificates (or ``None``), never
bare booleans, so callers can re-validate any reported hit.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

from .coloring import EdgeColoring
from .errors import PreconditionError
from .patterns import Embedding, PatternSpec

__all__ = [
    "find_rainbow_triangle",
    "find_mono",
    "has_mono_p3_in_color",
    "mono_complete_between",
    "wheel_from_mono_pair",
]

_TRIANGLE = PatternSpec.clique(3)
_WHEEL4 = PatternSpec.wheel(4)


def _bits(x: int) -> Iterator[int]:
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b


def _above(v: int) -> int:
    # mask of all vertices strictly greater than v
    return ~((1 << (v + 1)) - 1)


def _two_least(x: int) -> tuple[int, int]:
    a = (x & -x).bit_length() - 1
    x &= x - 1
    return a, (x & -x).bit_length() - 1


def find_rainbow_triangle(c: EdgeColoring) -> Optional[Embedding]:
    """First triangle whose three edges carry three distinct colors.

    Scans ordered triples u < v < w ascending; the returned embedding
    is the lexicographically least rainbow triangle.  Returns None for
    Gallai colorings.
    """
    n = c.n
    used = c.colors_used()
    if len(used) < 3:
        return None
    for u in range(n):
        for v in range(u + 1, n):
            a = c.color_of(u, v)
            # w must avoid color a at both u and v, and must not see
            # u and v in one shared color
            bad = c.neighbors(a, u) | c.neighbors(a, v)
            for col in used:
                bad |= c.neighbors(col, u) & c.neighbors(col, v)
            cand = _above(v) & ~bad & (c.vertex_mask)
            if cand:
                w = (cand & -cand).bit_length() - 1
                return Embedding(_TRIANGLE, None, (u, v, w))
    return None


def _find_path3(c: EdgeColoring, i: int) -> Optional[tuple[int, ...]]:
    # triples (v1, v2, v3), v1 < v3, ascending in (v1, v2, v3)
    n = c.n
    for v1 in range(n):
        nb1 = c.neighbors(i, v1)
        for v2 in _bits(nb1):
            cand = c.neighbors(i, v2) & _above(v1) & ~(1 << v2)
            if cand:
                v3 = (cand & -cand).bit_length() - 1
                return (v1, v2, v3)
    return None


def _find_cycle4(c: EdgeColoring, i: int) -> Optional[tuple[int, ...]]:
    # opposite pair (a, b) plus two common neighbors x < y
    n = c.n
    for a in range(n):
        na = c.neighbors(i, a)
        for b in range(a + 1, n):
            common = na & c.neighbors(i, b) & ~(1 << a) & ~(1 << b)
            if common.bit_count() >= 2:
                x, y = _two_least(common)
                return (a, x, b, y)
    return None


def _find_wheel4(c: EdgeColoring, i: int) -> Optional[tuple[int, ...]]:
    # hub first, then a 4-cycle inside the hub's neighborhood
    n = c.n
    for hub in range(n):
        ring = c.neighbors(i, hub)
        if ring.bit_count() < 4:
            continue
        for a in _bits(ring):
            na = c.neighbors(i, a) & ring
            for b in _bits(ring & _above(a)):
                common = na & c.neighbors(i, b) & ~(1 << b)
                if common.bit_count() >= 2:
                    x, y = _two_least(common)
                    return (a, x, b, y, hub)
    return None


def _find_cycle_within(c: EdgeColoring, i: int, mask: int, m: int):
    # lexicographically least m-cycle induced on `mask`, as a closed path
    # starting at its least vertex
    for s in _bits(mask):
        allowed = mask & _above(s)
        start_nb = c.neighbors(i, s)

        def ext(path: list[int], used: int):
            last = path[-1]
            if len(path) == m:
                return path if start_nb & (1 << last) else None
            for w in _bits(c.neighbors(i, last) & allowed & ~used):
                got = ext(path + [w], used | (1 << w))
                if got:
                    return got
            return None

        found = ext([s], 0)
        if found:
            return found
    return None


def _find_wheel(c: EdgeColoring, i: int, m: int) -> Optional[tuple[int, ...]]:
    for hub in range(c.n):
        ring = c.neighbors(i, hub)
        if ring.bit_count() < m:
            continue
        cyc = _find_cycle_within(c, i, ring, m)
        if cyc:
            return (*cyc, hub)
    return None


def _find_clique(c: EdgeColoring, i: int, t: int) -> Optional[tuple[int, ...]]:
    def ext(prefix: list[int], cand: int):
        if len(prefix) == t:
            return tuple(prefix)
        for w in _bits(cand):
            got = ext(prefix + [w], cand & c.neighbors(i, w) & _above(w))
            if got:
                return got
        return None

    return ext([], c.vertex_mask)


def _find_explicit(c: EdgeColoring, i: int, pat: PatternSpec):
    order = pat.order
    nbrs: list[list[int]] = [[] for _ in range(order)]
    for u, v in pat.edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    # assign pattern vertices in BFS order from 0; the pattern is
    # connected, so every later slot has a placed neighbor to anchor on
    bfs = [0]
    seen = {0}
    qi = 0
    while qi < len(bfs):
        for w in sorted(nbrs[bfs[qi]]):
            if w not in seen:
                seen.add(w)
                bfs.append(w)
        qi += 1
    host = [-1] * order

    def ext(slot: int, used: int):
        if slot == len(bfs):
            return True
        pv = bfs[slot]
        cand = c.vertex_mask & ~used
        for q in nbrs[pv]:
            if host[q] >= 0:
                cand &= c.neighbors(i, host[q])
        for w in _bits(cand):
            host[pv] = w
            if ext(slot + 1, used | (1 << w)):
                return True
        host[pv] = -1
        return False

    if ext(0, 0):
        return tuple(host)
    return None


def find_mono(
    c: EdgeColoring, pattern: PatternSpec, color: Optional[int] = None
) -> Optional[Embedding]:
    """First monochromatic copy of ``pattern``, or None.

    With ``color`` given, only that color class is searched; otherwise
    used colors are tried in ascending order and the first color with a
    hit wins.  Within one color the scan order is fixed per pattern
    kind (hubs ascending for wheels, centers ascending for paths, and
    so on), so results are reproducible.
    """
    if color is not None and color < 1:
        raise ValueError(f"colors are positive, got {color}")
    if pattern.order > c.n:
        return None
    colors = [color] if color is not None else sorted(c.colors_used())
    for i in colors:
        if i not in c.colors_used():
            continue
        if pattern.kind == "path3":
            vm = _find_path3(c, i)
        elif pattern.kind == "cycle4":
            vm = _find_cycle4(c, i)
        elif pattern.kind == "wheel":
            m = pattern.order - 1
            vm = _find_wheel4(c, i) if m == 4 else _find_wheel(c, i, m)
        elif pattern.kind == "clique":
            vm = _find_clique(c, i, pattern.order)
        else:
            vm = _find_explicit(c, i, pattern)
        if vm is not None:
            return Embedding(pattern, i, tuple(vm))
    return None


def has_mono_p3_in_color(c: EdgeColoring, color: int) -> bool:
    """True iff some vertex has two neighbors in the given color.

    Fast path equivalent to ``find_mono(c, PatternSpec.path3(), color)
    is not None``.
    """
    if color < 1:
        raise ValueError(f"colors are positive, got {color}")
    return any(c.neighbors(color, v).bit_count() >= 2 for v in range(c.n))


def _mask_of(c: EdgeColoring, vertices: Iterable[int], name: str) -> int:
    mask = 0
    for v in vertices:
        if not 0 <= v < c.n:
            raise ValueError(f"{name} contains vertex {v}, out of range")
        mask |= 1 << v
    if mask == 0:
        raise ValueError(f"{name} must be nonempty")
    return mask


def mono_complete_between(c: EdgeColoring, side_a, side_b) -> Optional[int]:
    """The single color joining all of A to all of B, or None.

    A and B must be disjoint nonempty vertex sets.  Returns the shared
    color when every A-B edge agrees, else None.
    """
    ma = _mask_of(c, side_a, "A")
    mb = _mask_of(c, side_b, "B")
    if ma & mb:
        raise ValueError("A and B overlap")
    a0 = (ma & -ma).bit_length() - 1
    b0 = (mb & -mb).bit_length() - 1
    cand = c.color_of(a0, b0)
    for a in _bits(ma):
        if mb & ~c.neighbors(cand, a):
            return None
    return cand


def wheel_from_mono_pair(
    c: EdgeColoring, x: int, y: int, color: int
) -> Optional[Embedding]:
    """Wheel built from a pair joined to everything else in one color.

    Precondition (else :class:`PreconditionError`): with A = V minus
    {x, y}, both x and y are joined to all of A in ``color``.  Then any
    path v1-v2-v3 of that color inside A closes a wheel: rim v1, x, v3,
    y and hub v2.  Returns the wheel for the first such path (triples
    scanned ascending), or None when A spans no such path.
    """
    if x == y or not (0 <= x < c.n and 0 <= y < c.n):
        raise ValueError(f"need two distinct vertices, got {x} and {y}")
    if color < 1:
        raise ValueError(f"colors are positive, got {color}")
    rest = c.vertex_mask & ~(1 << x) & ~(1 << y)
    for z in (x, y):
        if c.neighbors(color, z) & rest != rest:
            raise PreconditionError(
                f"vertex {z} is not joined to the rest in color {color}"
            )
    for v1 in _bits(rest):
        for v2 in _bits(c.neighbors(color, v1) & rest):
            cand = c.neighbors(color, v2) & rest & _above(v1) & ~(1 << v2)
            if cand:
                v3 = (cand & -cand).bit_length() - 1
                return Embedding(_WHEEL4, color, (v1, x, v3, y, v2))
    return None
