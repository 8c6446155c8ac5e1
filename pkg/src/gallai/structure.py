"""Structure of rainbow-triangle-free colorings.

A Gallai partition splits the vertices into at least two parts so that
any two parts are joined monochromatically and at most two colors
appear between parts in total.  Every rainbow-triangle-free coloring
of a complete graph on two or more vertices has one; `find_gallai_partition`
constructs it, `verify_gallai_partition` checks a claimed one, and
`reduced_graph` contracts parts to single vertices.

`peel_apex_sequence` and friends analyze apex vertices: vertices
joined to everything below them in a single color.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence, Union

from .coloring import EdgeColoring, edge_index
from .detect import find_mono, find_rainbow_triangle
from .errors import PreconditionError
from .patterns import PatternSpec

__all__ = [
    "GallaiPartition",
    "PartitionCheck",
    "ApexSequence",
    "verify_gallai_partition",
    "find_gallai_partition",
    "reduced_graph",
    "peel_apex_sequence",
    "check_apex_color_distinctness",
    "cross_color_profile",
]

_WHEEL4 = PatternSpec.wheel(4)


def _bits(x: int) -> Iterator[int]:
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b


@dataclass(frozen=True)
class GallaiPartition:
    """Parts (largest first, ties by least vertex), their cross colors,
    and the reduced coloring with one vertex per part."""

    parts: tuple[tuple[int, ...], ...]
    cross_colors: frozenset[int]
    reduced: EdgeColoring

    @property
    def p(self) -> int:
        return len(self.parts)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "parts": [list(part) for part in self.parts],
            "cross_colors": sorted(self.cross_colors),
            "reduced": {
                "n": self.reduced.n,
                "k": self.reduced.k,
                "edges": [[u, v, c] for u, v, c in self.reduced.edges()],
            },
        }


@dataclass(frozen=True)
class PartitionCheck:
    """Outcome of verifying a claimed partition."""

    ok: bool
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class ApexSequence:
    """Vertices peeled one at a time, each monochromatically complete
    to everything not yet peeled; ``remainder`` is what is left."""

    entries: tuple[tuple[int, int], ...]
    remainder: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "entries": [[v, c] for v, c in self.entries],
            "remainder": list(self.remainder),
        }


PartitionLike = Union[GallaiPartition, Sequence[Iterable[int]]]


def _normalize_parts(c: EdgeColoring, parts_in: Sequence[Iterable[int]]):
    parts = []
    seen = 0
    for idx, raw in enumerate(parts_in):
        part = sorted(set(raw))
        if not part:
            raise ValueError(f"part {idx} is empty")
        mask = 0
        for v in part:
            if not 0 <= v < c.n:
                raise ValueError(f"part {idx} contains vertex {v}, out of range")
            mask |= 1 << v
        if mask & seen:
            raise ValueError(f"part {idx} overlaps an earlier part")
        seen |= mask
        parts.append((tuple(part), mask))
    if seen != c.vertex_mask:
        raise ValueError("parts do not cover every vertex")
    if not parts:
        raise ValueError("partition has no parts")
    return parts


def _colors_between(c: EdgeColoring, xs: tuple[int, ...], ymask: int) -> set[int]:
    found: set[int] = set()
    for a in xs:
        rest = ymask
        while rest:
            col = c.color_of(a, (rest & -rest).bit_length() - 1)
            found.add(col)
            rest &= ~c.neighbors(col, a)
    return found


def _mono_between(c: EdgeColoring, xs: tuple[int, ...], ymask: int) -> Optional[int]:
    cand = c.color_of(xs[0], (ymask & -ymask).bit_length() - 1)
    for a in xs:
        if ymask & ~c.neighbors(cand, a):
            return None
    return cand


def verify_gallai_partition(c: EdgeColoring, partition: PartitionLike) -> PartitionCheck:
    """Check a claimed Gallai partition; malformed input raises ValueError.

    Violations reported: a pair of parts joined in more than one color,
    more than two colors across parts in total, and (when a full
    :class:`GallaiPartition` is given) reduced-graph or cross-color
    fields that disagree with the coloring.
    """
    expected: Optional[GallaiPartition] = None
    if isinstance(partition, GallaiPartition):
        expected = partition
        raw: Sequence[Iterable[int]] = partition.parts
    else:
        raw = partition
    parts = _normalize_parts(c, raw)
    violations: list[str] = []
    cross: set[int] = set()
    pair_color: dict[tuple[int, int], int] = {}
    for i, j in combinations(range(len(parts)), 2):
        between = _colors_between(c, parts[i][0], parts[j][1])
        cross |= between
        if len(between) > 1:
            violations.append(
                f"parts {i} and {j} are joined in colors {sorted(between)}"
            )
        else:
            pair_color[(i, j)] = next(iter(between))
    if len(cross) > 2:
        violations.append(
            f"{len(cross)} colors appear between parts ({sorted(cross)}), at most 2 allowed"
        )
    if expected is not None:
        if expected.cross_colors != frozenset(cross):
            violations.append(
                f"claimed cross colors {sorted(expected.cross_colors)} "
                f"but found {sorted(cross)}"
            )
        red = expected.reduced
        if red.n != len(parts):
            violations.append(f"reduced graph has {red.n} vertices for {len(parts)} parts")
        else:
            for (i, j), col in pair_color.items():
                if red.color_of(i, j) != col:
                    violations.append(
                        f"reduced edge ({i},{j}) is color {red.color_of(i, j)}, "
                        f"parts are joined in {col}"
                    )
    return PartitionCheck(not violations, tuple(violations))


def _build_partition(c: EdgeColoring, clusters: list[int]) -> GallaiPartition:
    parts = sorted(
        (tuple(_bits(m)) for m in clusters),
        key=lambda part: (-len(part), part[0]),
    )
    masks = [sum(1 << v for v in part) for part in parts]
    p = len(parts)
    colors = [0] * (p * (p - 1) // 2)
    cross: set[int] = set()
    for i in range(p):
        for j in range(i + 1, p):
            col = _mono_between(c, parts[i], masks[j])
            if col is None:
                raise AssertionError("cluster pair is not monochromatic")
            colors[edge_index(p, i, j)] = col
            cross.add(col)
    reduced = EdgeColoring(p, c.k, colors)
    return GallaiPartition(tuple(parts), frozenset(cross), reduced)


def _components_avoiding(c: EdgeColoring, a: int, b: int) -> list[int]:
    # connected components of the graph formed by edges NOT colored a or b
    n = c.n
    comp = [-1] * n
    masks: list[int] = []
    avoid = {a, b}
    other = sorted(c.colors_used() - avoid)
    for s in range(n):
        if comp[s] >= 0:
            continue
        cid = len(masks)
        stack = [s]
        comp[s] = cid
        mask = 1 << s
        while stack:
            v = stack.pop()
            for col in other:
                for w in _bits(c.neighbors(col, v)):
                    if comp[w] < 0:
                        comp[w] = cid
                        mask |= 1 << w
                        stack.append(w)
        masks.append(mask)
    return masks


def _coarsen(c: EdgeColoring, clusters: list[int]) -> list[int]:
    # merge any two clusters not joined monochromatically; between two
    # clusters only the two avoided colors can occur, so merging is
    # forced and the result stays a refinement of any true partition
    work = list(clusters)
    merged = True
    while merged:
        merged = False
        for i in range(len(work)):
            xs = tuple(_bits(work[i]))
            for j in range(i + 1, len(work)):
                if _mono_between(c, xs, work[j]) is None:
                    work[i] |= work[j]
                    del work[j]
                    merged = True
                    break
            if merged:
                break
    return work


def _exhaustive_partition(c: EdgeColoring) -> Optional[GallaiPartition]:
    # last-resort scan over all set partitions in restricted-growth
    # order; only viable for tiny n
    n = c.n
    assignment = [0] * n

    def grow(v: int, groups: int):
        if v == n:
            if groups < 2:
                return None
            clusters = [0] * groups
            for x in range(n):
                clusters[assignment[x]] |= 1 << x
            allc: set[int] = set()
            for i in range(groups):
                xs = tuple(_bits(clusters[i]))
                for j in range(i + 1, groups):
                    between = _colors_between(c, xs, clusters[j])
                    if len(between) > 1:
                        return None
                    allc |= between
            if len(allc) > 2:
                return None
            return clusters
        for g in range(groups + 1):
            assignment[v] = g
            got = grow(v + 1, max(groups, g + 1))
            if got is not None:
                return got
        return None

    clusters = grow(1, 1)
    return None if clusters is None else _build_partition(c, clusters)


def find_gallai_partition(c: EdgeColoring) -> GallaiPartition:
    """Construct a Gallai partition of a rainbow-triangle-free coloring.

    Raises :class:`PreconditionError` if the coloring has a rainbow
    triangle, and ValueError for a single vertex.  With at most two
    used colors the singleton partition is returned.  Otherwise the
    partition comes from the components left after deleting two color
    classes, coarsened until all pairs are monochromatic; color pairs
    are tried in ascending order and the first that yields two or more
    parts wins, which makes the output deterministic.
    """
    if c.n < 2:
        raise ValueError("partition needs at least two vertices")
    rainbow = find_rainbow_triangle(c)
    if rainbow is not None:
        raise PreconditionError(
            f"rainbow triangle at vertices {rainbow.vertex_map}"
        )
    used = sorted(c.colors_used())
    if len(used) <= 2:
        return _build_partition(c, [1 << v for v in range(c.n)])
    for a, b in combinations(used, 2):
        comps = _components_avoiding(c, a, b)
        if len(comps) < 2:
            continue
        clusters = _coarsen(c, comps)
        if len(clusters) >= 2:
            return _build_partition(c, clusters)
    if c.n <= 10:
        got = _exhaustive_partition(c)
        if got is not None:
            return got
    raise AssertionError("no Gallai partition found for a Gallai coloring")


def reduced_graph(c: EdgeColoring, partition: PartitionLike) -> EdgeColoring:
    """Contract each part to one vertex, keeping the cross colors.

    Part i of the partition becomes vertex i.  The partition must be a
    valid Gallai partition of ``c``; otherwise ValueError.
    """
    if isinstance(partition, GallaiPartition):
        raw: Sequence[Iterable[int]] = partition.parts
    else:
        raw = partition
    check = verify_gallai_partition(c, raw)
    if not check.ok:
        raise ValueError("not a Gallai partition: " + "; ".join(check.violations))
    parts = _normalize_parts(c, raw)
    p = len(parts)
    colors = [0] * (p * (p - 1) // 2)
    for i in range(p):
        for j in range(i + 1, p):
            col = _mono_between(c, parts[i][0], parts[j][1])
            assert col is not None
            colors[edge_index(p, i, j)] = col
    return EdgeColoring(p, c.k, colors)


def peel_apex_sequence(c: EdgeColoring) -> ApexSequence:
    """Greedily peel apex vertices until none is left or one vertex remains.

    At each step the least vertex that is joined to all remaining
    others in a single color is removed, recording that color.  The
    scan order makes the sequence deterministic.
    """
    remaining = c.vertex_mask
    entries: list[tuple[int, int]] = []
    while remaining.bit_count() >= 2:
        picked = None
        for x in _bits(remaining):
            rest = remaining & ~(1 << x)
            col = c.color_of(x, (rest & -rest).bit_length() - 1)
            if rest & ~c.neighbors(col, x) == 0:
                picked = (x, col)
                break
        if picked is None:
            break
        entries.append(picked)
        remaining &= ~(1 << picked[0])
    return ApexSequence(tuple(entries), tuple(_bits(remaining)))


def _has_p3_within(c: EdgeColoring, color: int, mask: int) -> bool:
    for v in _bits(mask):
        if (c.neighbors(color, v) & mask).bit_count() >= 2:
            return True
    return False


def check_apex_color_distinctness(c: EdgeColoring, seq: ApexSequence) -> bool:
    """Test whether repeated apex colors are consistent with having no
    monochromatic 4-rim wheel.

    If two peeled vertices share a color i and the set remaining after
    the later peel spans an i-colored path on three vertices, those
    five vertices form an i-colored wheel; in a wheel-free coloring
    this cannot happen, so all apex colors must be distinct there.
    Returns False when such a forced wheel is missed by the detector,
    i.e. the premise fails; True otherwise.  An inconsistent sequence
    raises ValueError.
    """
    remaining = c.vertex_mask
    suffix_after: list[int] = []
    seen = 0
    for x, col in seq.entries:
        if not 0 <= x < c.n or seen & (1 << x):
            raise ValueError(f"apex sequence repeats or misplaces vertex {x}")
        rest = remaining & ~(1 << x)
        if rest & ~c.neighbors(col, x):
            raise ValueError(
                f"vertex {x} is not joined to the remainder in color {col}"
            )
        seen |= 1 << x
        remaining = rest
        suffix_after.append(rest)
    if tuple(_bits(remaining)) != seq.remainder:
        raise ValueError("remainder does not match the peeled entries")
    entries = seq.entries
    for bi in range(len(entries)):
        for ai in range(bi):
            if entries[ai][1] != entries[bi][1]:
                continue
            color = entries[bi][1]
            if _has_p3_within(c, color, suffix_after[bi]):
                if find_mono(c, _WHEEL4, color) is None:
                    return False
    return True


def cross_color_profile(
    c: EdgeColoring, group: Iterable[int], colors: tuple[int, int]
) -> tuple[tuple[int, ...], ...]:
    """Split outside vertices by how they attach to ``group``.

    ``colors`` is the ordered pair (red, blue).  Returns three sorted
    tuples: vertices joined to all of the group in blue, in red, and
    the rest.  The group must be nonempty and the two colors distinct.
    """
    red, blue = colors
    if red == blue or red < 1 or blue < 1:
        raise ValueError(f"need two distinct positive colors, got {colors}")
    gmask = 0
    for v in group:
        if not 0 <= v < c.n:
            raise ValueError(f"group vertex {v} out of range")
        gmask |= 1 << v
    if gmask == 0:
        raise ValueError("group must be nonempty")
    blue_side: list[int] = []
    red_side: list[int] = []
    other: list[int] = []
    for v in _bits(c.vertex_mask & ~gmask):
        if gmask & ~c.neighbors(blue, v) == 0:
            blue_side.append(v)
        elif gmask & ~c.neighbors(red, v) == 0:
            red_side.append(v)
        else:
            other.append(v)
    return tuple(blue_side), tuple(red_side), tuple(other)
