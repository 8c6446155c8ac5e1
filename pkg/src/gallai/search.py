"""Backtracking search for edge colorings avoiding forbidden structures.

A :class:`SearchTask` asks for a coloring of K_n with k colors that
contains none of the listed monochromatic patterns (each either in one
specific color or in every color) and, optionally, no rainbow triangle.
`search_witness` either produces such a coloring, proves none exists,
or gives up at a node budget.

Design notes, fixed for reproducibility:

* Edges are assigned in column order (0,1), (0,2), (1,2), (0,3), ...,
  one new vertex at a time, so early decisions close triangles early
  and conflicts surface near the root.
* A "node" is one attempted color assignment, counted against both the
  per-restart budget and the task's ``node_limit``.
* Conflicts are detected incrementally: only structures through the
  newly colored edge are checked.
* ``colorSwap`` symmetry allows a new color only when all smaller ones
  already occur (first edge gets color 1, and so on).  It is rejected
  for color-scoped forbidden patterns, which color relabeling would
  not preserve.  ``vertexOrder`` adds a canonical-form prune on vertex
  transpositions, checked each time a column completes.
* Restarts follow a doubling node budget; restart 0 tries colors in
  ascending order, later restarts permute the per-depth color order
  with a stream seeded by (seed, restart).  A restart that exhausts
  the tree proves unsatisfiability regardless of its order.

Outcomes are deterministic functions of the task (the seed is part of
it).  Witnesses are re-validated with the detectors from
:mod:`gallai.detect` before being returned; the search kernel is not
trusted for the final answer.
"""

from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass
from typing import Any, Iterator, Optional

from .coloring import EdgeColoring, edge_index
from .detect import find_mono, find_rainbow_triangle
from .patterns import PatternSpec

__all__ = [
    "DEFAULT_NODE_LIMIT",
    "SearchTask",
    "SearchStats",
    "SearchOutcome",
    "UnavoidableOutcome",
    "PartialColoring",
    "incremental_conflict",
    "search_witness",
    "verify_unavoidable",
]

DEFAULT_NODE_LIMIT = 20_000_000
_RESTART_BASE = 250_000

_EXHAUSTED, _FOUND, _BUDGET, _LIMIT = 0, 1, 2, 3

_SYMMETRIES = ("none", "colorSwap", "vertexOrder")


def _bits(x: int) -> Iterator[int]:
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b


@dataclass(frozen=True)
class SearchTask:
    """What to search for.  Immutable and JSON-serializable.

    ``forbidden`` lists (pattern, color) pairs; color None means the
    pattern is forbidden in every color.  ``seed`` only influences the
    color try-order of restarts, never the meaning of the outcome.
    """

    n: int
    k: int
    forbidden: tuple[tuple[PatternSpec, Optional[int]], ...] = ()
    forbid_rainbow_triangle: bool = False
    symmetry: str = "colorSwap"
    node_limit: int = DEFAULT_NODE_LIMIT
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one vertex, got n={self.n}")
        if self.k < 1:
            raise ValueError(f"palette must have at least one color, got k={self.k}")
        if self.node_limit < 1:
            raise ValueError(f"node limit must be positive, got {self.node_limit}")
        if self.symmetry not in _SYMMETRIES:
            raise ValueError(f"symmetry must be one of {_SYMMETRIES}")
        norm = []
        for pattern, scope in self.forbidden:
            if not isinstance(pattern, PatternSpec):
                raise ValueError(f"not a pattern: {pattern!r}")
            if scope is not None:
                scope = int(scope)
                if not 1 <= scope <= self.k:
                    raise ValueError(f"pattern color {scope} outside 1..{self.k}")
                if self.symmetry != "none":
                    raise ValueError(
                        "color-scoped patterns need symmetry='none'; color "
                        "relabeling does not preserve them"
                    )
            norm.append((pattern, scope))
        object.__setattr__(self, "forbidden", tuple(norm))

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "forbidden": [
                {"pattern": pat.to_json(), "color": scope}
                for pat, scope in self.forbidden
            ],
            "forbid_rainbow_triangle": self.forbid_rainbow_triangle,
            "symmetry": self.symmetry,
            "node_limit": self.node_limit,
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "SearchTask":
        try:
            forbidden = tuple(
                (PatternSpec.from_json(item["pattern"]), item.get("color"))
                for item in data.get("forbidden", ())
            )
            return cls(
                n=int(data["n"]),
                k=int(data["k"]),
                forbidden=forbidden,
                forbid_rainbow_triangle=bool(data.get("forbid_rainbow_triangle", False)),
                symmetry=str(data.get("symmetry", "colorSwap")),
                node_limit=int(data.get("node_limit", DEFAULT_NODE_LIMIT)),
                seed=int(data.get("seed", 0)),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed task JSON: {exc}") from exc


@dataclass(frozen=True)
class SearchStats:
    """Node accounting.  ``nodes`` counts attempted color assignments,
    ``prunes`` the attempts rejected by conflict, lookahead, or
    canonical-form checks.  Both are deterministic per task; ``elapsed``
    (seconds) is not."""

    nodes: int
    prunes: int
    restarts: int
    elapsed: float


@dataclass(frozen=True)
class SearchOutcome:
    status: str  # "witness" | "exhausted" | "limit_reached"
    witness: Optional[EdgeColoring]
    stats: SearchStats


@dataclass(frozen=True)
class UnavoidableOutcome:
    status: str  # "confirmed" | "counterexample" | "too_large"
    counterexample: Optional[EdgeColoring]
    stats: SearchStats


# -- conflict kernels ----------------------------------------------------
# Each kernel answers: does the just-colored edge (u, v) complete a copy
# of the pattern inside one color class?  `adj` is that class's list of
# neighbor bitmasks, already including the new edge.


def _mask_has_clique(adj: list[int], cand: int, need: int) -> bool:
    if need <= 0:
        return True
    if need == 1:
        return cand != 0
    while cand:
        b = cand & -cand
        w = b.bit_length() - 1
        cand ^= b
        # members above w only; lower ones were already tried as lead
        if _mask_has_clique(adj, cand & adj[w], need - 1):
            return True
    return False


def _completes_wheel4(adj: list[int], u: int, v: int) -> bool:
    bu, bv = 1 << u, 1 << v
    mu, mv = adj[u], adj[v]
    both = mu & mv
    # u as hub: a 4-cycle through v inside N(u)
    if both:
        for a in _bits(both):
            opp = adj[a] & mu & ~bv
            if opp:
                for b in _bits(both & ~((1 << (a + 1)) - 1)):
                    if opp & adj[b]:
                        return True
    # v as hub, symmetric
    if both:
        for a in _bits(both):
            opp = adj[a] & mv & ~bu
            if opp:
                for b in _bits(both & ~((1 << (a + 1)) - 1)):
                    if opp & adj[b]:
                        return True
    # (u, v) as a rim edge: hub h sees both, rim closes u-v-w-x-u
    for h in _bits(both):
        ring = adj[h]
        bh = 1 << h
        for w in _bits(mv & ring & ~bu & ~bh):
            if adj[w] & mu & ring & ~bv & ~bh:
                return True
    return False


def _bfs_plans(pattern: PatternSpec):
    # anchored embedding plans: map a pattern edge onto the new host
    # edge, then place remaining pattern vertices, each adjacent to
    # something already placed
    order_n = pattern.order
    nbrs: list[list[int]] = [[] for _ in range(order_n)]
    for a, b in pattern.edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    plans = []
    for p, q in pattern.edges:
        for a0, a1 in ((p, q), (q, p)):
            placed = [a0, a1]
            slots = []
            while len(placed) < order_n:
                nxt = None
                for cand in range(order_n):
                    if cand not in placed and any(t in placed for t in nbrs[cand]):
                        nxt = cand
                        break
                preds = tuple(t for t in nbrs[nxt] if t in placed)
                slots.append((nxt, preds))
                placed.append(nxt)
            plans.append((a0, a1, tuple(slots)))
    return plans


def _make_check(pattern: PatternSpec):
    kind = pattern.kind
    if kind == "path3":

        def chk(adj: list[int], u: int, v: int) -> bool:
            return bool(adj[u] & ~(1 << v) or adj[v] & ~(1 << u))

    elif kind == "cycle4":

        def chk(adj: list[int], u: int, v: int) -> bool:
            bu, bv = 1 << u, 1 << v
            for a in _bits(adj[v] & ~bu):
                if adj[a] & adj[u] & ~bv:
                    return True
            return False

    elif kind == "clique":
        t = pattern.order

        def chk(adj: list[int], u: int, v: int) -> bool:
            if t == 2:
                return True
            return _mask_has_clique(adj, adj[u] & adj[v], t - 2)

    elif kind == "wheel" and pattern.order == 5:
        chk = _completes_wheel4

    else:
        plans = _bfs_plans(pattern)
        order_n = pattern.order

        def chk(adj: list[int], u: int, v: int) -> bool:
            host = [-1] * order_n
            bu, bv = 1 << u, 1 << v

            def extend(si: int, used: int, slots) -> bool:
                if si == len(slots):
                    return True
                pv, preds = slots[si]
                cand = ~used
                for t in preds:
                    cand &= adj[host[t]]
                ok = False
                for w in _bits(cand):
                    host[pv] = w
                    if extend(si + 1, used | (1 << w), slots):
                        ok = True
                        break
                if not ok:
                    host[pv] = -1
                return ok

            for a0, a1, slots in plans:
                host[a0], host[a1] = u, v
                if extend(0, bu | bv, slots):
                    return True
                host[a0] = host[a1] = -1
            return False

    return chk


class PartialColoring:
    """Mutable assignment state over a task; the engine's working object.

    Color 0 means unassigned.  Tracks per-color neighbor bitmasks plus
    an any-color adjacency mask per vertex, which is all the conflict
    kernels need.
    """

    __slots__ = ("task", "n", "k", "colors", "masks", "assigned", "_checks")

    def __init__(self, task: SearchTask):
        self.task = task
        self.n = task.n
        self.k = task.k
        self.colors = [0] * (task.n * (task.n - 1) // 2)
        self.masks = [[0] * task.n for _ in range(task.k + 1)]
        self.assigned = [0] * task.n
        self._checks = tuple(
            (scope, _make_check(pat)) for pat, scope in task.forbidden
        )

    def color_at(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        if u == v or u < 0 or v >= self.n:
            raise ValueError(f"no edge ({u},{v}) in K_{self.n}")
        return self.colors[edge_index(self.n, u, v)]

    def assign(self, u: int, v: int, color: int) -> None:
        if u > v:
            u, v = v, u
        if not 1 <= color <= self.k:
            raise ValueError(f"color {color} outside 1..{self.k}")
        idx = edge_index(self.n, u, v)
        if self.colors[idx]:
            raise ValueError(f"edge ({u},{v}) already colored")
        self.colors[idx] = color
        row = self.masks[color]
        row[u] |= 1 << v
        row[v] |= 1 << u
        self.assigned[u] |= 1 << v
        self.assigned[v] |= 1 << u

    def unassign(self, u: int, v: int) -> None:
        if u > v:
            u, v = v, u
        idx = edge_index(self.n, u, v)
        color = self.colors[idx]
        if not color:
            raise ValueError(f"edge ({u},{v}) is not colored")
        self.colors[idx] = 0
        row = self.masks[color]
        row[u] &= ~(1 << v)
        row[v] &= ~(1 << u)
        self.assigned[u] &= ~(1 << v)
        self.assigned[v] &= ~(1 << u)

    def conflict(self, u: int, v: int, color: int) -> bool:
        """Does the edge (u, v), colored ``color``, complete a forbidden
        structure?  Only structures through this edge are examined."""
        if self.task.forbid_rainbow_triangle:
            both = self.assigned[u] & self.assigned[v]
            for w in _bits(both):
                cu = self.color_at(u, w)
                cv = self.color_at(v, w)
                if cu != cv and cu != color and cv != color:
                    return True
        adj = self.masks[color]
        for scope, chk in self._checks:
            if (scope is None or scope == color) and chk(adj, u, v):
                return True
        return False


def incremental_conflict(partial: PartialColoring, edge: tuple[int, int]) -> bool:
    """True iff the already-colored ``edge`` completes a forbidden
    structure of its task.  The edge must be assigned."""
    u, v = edge
    color = partial.color_at(u, v)
    if color == 0:
        raise ValueError(f"edge ({u},{v}) is not colored")
    return partial.conflict(u, v, color)


def _canonical_ok(pc: PartialColoring, order, vv: int) -> bool:
    # completed column vv: prefix covers K_{vv+1}; prune if swapping
    # labels (j, vv) and re-canonicalizing colors gives a smaller prefix
    prefix_len = (vv + 1) * vv // 2
    n = pc.n
    colors = pc.colors
    for j in range(vv):
        relabel = [0] * (pc.k + 1)
        next_id = 1
        verdict = 0  # 0 equal so far, stop on first difference
        for pos in range(prefix_len):
            a, b = order[pos]
            a2 = vv if a == j else (j if a == vv else a)
            b2 = vv if b == j else (j if b == vv else b)
            if a2 > b2:
                a2, b2 = b2, a2
            col = colors[edge_index(n, a2, b2)]
            rc = relabel[col]
            if rc == 0:
                rc = relabel[col] = next_id
                next_id += 1
            cur = colors[edge_index(n, a, b)]
            if rc != cur:
                verdict = -1 if rc < cur else 1
                break
        if verdict < 0:
            return False
    return True


def search_witness(task: SearchTask) -> SearchOutcome:
    """Run the backtracking engine on ``task``.

    Returns a witness (re-validated with the detectors), a proof of
    exhaustion, or ``limit_reached`` once ``node_limit`` assignment
    attempts are spent.  Single-threaded and deterministic.
    """
    t_start = time.perf_counter()
    n, k = task.n, task.k
    m = n * (n - 1) // 2
    order = [(u, v) for v in range(1, n) for u in range(v)]
    pc = PartialColoring(task)
    colorswap = task.symmetry in ("colorSwap", "vertexOrder")
    vertexorder = task.symmetry == "vertexOrder"
    limit = task.node_limit
    depth_needed = m + 16
    if sys.getrecursionlimit() < depth_needed:
        sys.setrecursionlimit(depth_needed + 64)

    nodes = 0
    prunes = 0
    stop_at = 0  # set per restart

    base_order = list(range(1, k + 1))
    color_orders: list[list[int]] = [base_order] * m

    def has_option(j: int, vv: int) -> bool:
        for c2 in base_order:
            pc.assign(j, vv, c2)
            bad = pc.conflict(j, vv, c2)
            pc.unassign(j, vv)
            if not bad:
                return True
        return False

    def dfs(pos: int, max_used: int) -> int:
        nonlocal nodes, prunes
        if pos == m:
            return _FOUND
        u, v = order[pos]
        top = min(k, max_used + 1) if colorswap else k
        for c in color_orders[pos]:
            if c > top:
                continue
            if nodes >= stop_at:
                return _LIMIT if nodes >= limit else _BUDGET
            nodes += 1
            pc.assign(u, v, c)
            ok = not pc.conflict(u, v, c)
            if ok:
                # forward check: every later edge into v must keep an option
                for j in range(u + 1, v):
                    if not has_option(j, v):
                        ok = False
                        break
            if ok and vertexorder and u == v - 1:
                ok = _canonical_ok(pc, order, v)
            if not ok:
                prunes += 1
                pc.unassign(u, v)
                continue
            got = dfs(pos + 1, c if c > max_used else max_used)
            if got != _EXHAUSTED:
                if got != _FOUND:
                    pc.unassign(u, v)
                return got
            pc.unassign(u, v)
        return _EXHAUSTED

    restart = 0
    result = _BUDGET
    while result == _BUDGET:
        if restart == 0:
            color_orders = [base_order] * m
        else:
            rng = random.Random(f"{task.seed}:{restart}")
            color_orders = [rng.sample(base_order, k) for _ in range(m)]
        stop_at = min(limit, nodes + (_RESTART_BASE << restart))
        result = dfs(0, 0)
        restart += 1

    elapsed = time.perf_counter() - t_start
    stats = SearchStats(nodes, prunes, restart - 1, elapsed)
    if result == _FOUND:
        witness = EdgeColoring(n, k, pc.colors)
        _revalidate(task, witness)
        return SearchOutcome("witness", witness, stats)
    if result == _EXHAUSTED:
        return SearchOutcome("exhausted", None, stats)
    return SearchOutcome("limit_reached", None, stats)


def _revalidate(task: SearchTask, witness: EdgeColoring) -> None:
    # the detectors, not the search kernel, get the last word
    if task.forbid_rainbow_triangle and find_rainbow_triangle(witness) is not None:
        raise RuntimeError("engine returned a coloring with a rainbow triangle")
    for pattern, scope in task.forbidden:
        hit = find_mono(witness, pattern, scope)
        if hit is not None:
            raise RuntimeError(
                f"engine returned a coloring containing {pattern.label} "
                f"at {hit.vertex_map} in color {hit.color}"
            )


def verify_unavoidable(
    n: int, k: int, pattern: PatternSpec, cap: int = DEFAULT_NODE_LIMIT
) -> UnavoidableOutcome:
    """Decide whether every k-coloring of K_n contains a monochromatic
    ``pattern``, by exhaustive search for a pattern-free coloring.

    ``cap`` bounds the number of search nodes; hitting it yields
    ``too_large`` rather than an answer.
    """
    task = SearchTask(
        n=n,
        k=k,
        forbidden=((pattern, None),),
        symmetry="colorSwap",
        node_limit=cap,
        seed=0,
    )
    out = search_witness(task)
    if out.status == "witness":
        return UnavoidableOutcome("counterexample", out.witness, out.stats)
    if out.status == "exhausted":
        return UnavoidableOutcome("confirmed", None, out.stats)
    return UnavoidableOutcome("too_large", None, out.stats)
