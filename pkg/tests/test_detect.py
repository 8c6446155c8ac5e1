import random

import pytest

import oracles
from gallai import (
    EdgeColoring,
    PatternSpec,
    PreconditionError,
    find_mono,
    find_rainbow_triangle,
    has_mono_p3_in_color,
    join,
    mono_complete_between,
    restrict,
    wheel_from_mono_pair,
)

W4 = PatternSpec.wheel(4)
P3 = PatternSpec.path3()
C4 = PatternSpec.cycle4()
K3 = PatternSpec.clique(3)


def mono(n, color=1, k=None):
    return EdgeColoring(n, k or color, [color] * (n * (n - 1) // 2))


def test_rainbow_on_rainbow_triangle():
    c = EdgeColoring(3, 3, [1, 2, 3])
    hit = find_rainbow_triangle(c)
    assert hit is not None and hit.vertex_map == (0, 1, 2)
    assert hit.color is None and hit.check(c)


def test_rainbow_never_in_two_colors():
    for seed in range(30):
        c = oracles.arbitrary_coloring(8, 2, seed)
        assert find_rainbow_triangle(c) is None


def test_rainbow_agrees_with_oracle():
    for seed in range(120):
        c = oracles.arbitrary_coloring(4 + seed % 7, 4, seed)
        expected = oracles.rainbow_triangles(c)
        hit = find_rainbow_triangle(c)
        assert (hit is None) == (not expected)
        if hit is not None:
            assert tuple(hit.vertex_map) in expected  # sorted triples both sides
            assert hit.check(c)


def test_rainbow_returns_lex_least_triangle():
    for seed in range(40):
        c = oracles.arbitrary_coloring(7, 3, seed * 13 + 1)
        expected = oracles.rainbow_triangles(c)
        hit = find_rainbow_triangle(c)
        if expected:
            assert hit is not None and tuple(hit.vertex_map) == min(expected)


def test_pattern_larger_than_host():
    assert find_mono(mono(4), W4) is None
    assert find_mono(mono(2), K3) is None


def test_mono_k5_contains_w4_deterministically():
    hit = find_mono(mono(5), W4)
    assert hit is not None
    # documented scan: hubs ascending, then rim pairs; frozen as regression
    assert hit.vertex_map == (1, 3, 2, 4, 0)
    assert hit.color == 1 and hit.check(mono(5))


def test_pentagon_color_classes_are_triangle_and_c4_free(pentagon):
    for color in (1, 2):
        assert find_mono(pentagon, K3, color) is None
        assert find_mono(pentagon, C4, color) is None
        assert find_mono(pentagon, P3, color) is not None


def test_join_of_pentagons_has_no_mono_w4(pentagon):
    j = join(pentagon, pentagon, 3)
    assert find_rainbow_triangle(j) is None
    assert find_mono(j, W4) is None
    for color in (1, 2, 3):
        assert not oracles.has_mono_w4(j, color)
    # but the cross color is rich in smaller patterns
    assert find_mono(j, C4, 3) is not None
    assert find_mono(j, K3) is None  # color 3 is bipartite, 1 and 2 are 5-cycles


def test_find_mono_color_validation(pentagon):
    with pytest.raises(ValueError):
        find_mono(pentagon, P3, 0)
    assert find_mono(pentagon, P3, 7) is None  # unused color, nothing to find


def test_find_mono_agrees_with_oracle_on_all_patterns():
    rng = random.Random(71)
    patterns = {P3: oracles.has_mono_p3, C4: oracles.has_mono_c4,
                K3: lambda c, i: oracles.has_mono_clique(c, i, 3),
                W4: oracles.has_mono_w4}
    for trial in range(60):
        n = rng.randint(4, 10)
        k = rng.randint(1, 4)
        c = oracles.arbitrary_coloring(n, k, trial * 977 + 5)
        for pattern, oracle in patterns.items():
            per_color = {i: oracle(c, i) for i in range(1, k + 1)}
            for i, want in per_color.items():
                hit = find_mono(c, pattern, i)
                assert (hit is not None) == want
                if hit is not None:
                    assert hit.color == i and hit.check(c)
            hit_any = find_mono(c, pattern)
            assert (hit_any is not None) == any(per_color.values())
            if hit_any is not None:
                assert hit_any.check(c)


def test_explicit_pattern_matches_named_equivalents():
    rng = random.Random(9)
    explicit_p3 = PatternSpec.explicit(3, [(0, 1), (1, 2)])
    explicit_c4 = PatternSpec.explicit(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    for trial in range(25):
        c = oracles.arbitrary_coloring(rng.randint(4, 9), 3, trial + 400)
        for i in range(1, 4):
            assert (find_mono(c, explicit_p3, i) is None) == (
                find_mono(c, P3, i) is None
            )
            assert (find_mono(c, explicit_c4, i) is None) == (
                find_mono(c, C4, i) is None
            )
            hit = find_mono(c, explicit_c4, i)
            if hit is not None:
                assert hit.check(c)


def test_larger_wheel_against_generic_oracle():
    rng = random.Random(23)
    w6 = PatternSpec.wheel(6)
    for trial in range(12):
        c = oracles.arbitrary_coloring(rng.randint(7, 8), 2, trial + 60)
        for i in (1, 2):
            assert (find_mono(c, w6, i) is not None) == oracles.has_mono_wheel(c, i, 6)
            hit = find_mono(c, w6, i)
            if hit is not None:
                assert hit.check(c)


def test_clique_sizes():
    c = mono(6)
    for t in range(2, 7):
        hit = find_mono(c, PatternSpec.clique(t), 1)
        assert hit is not None and hit.vertex_map == tuple(range(t))
    assert find_mono(c, PatternSpec.clique(7), 1) is None


def test_has_mono_p3_matches_find_mono():
    rng = random.Random(5)
    for trial in range(80):
        c = oracles.arbitrary_coloring(rng.randint(2, 9), 3, trial + 900)
        for i in range(1, 4):
            assert has_mono_p3_in_color(c, i) == (find_mono(c, P3, i) is not None)
    with pytest.raises(ValueError):
        has_mono_p3_in_color(c, 0)


def test_perfect_matching_has_no_p3():
    # disjoint color-1 edges (0,1) and (2,3), everything else color 2
    c = EdgeColoring(4, 2, [1, 2, 2, 2, 2, 1])
    assert not has_mono_p3_in_color(c, 1)
    assert find_mono(c, P3, 1) is None


def test_mono_complete_between(pentagon):
    j = join(pentagon, pentagon, 3)
    assert mono_complete_between(j, range(5), range(5, 10)) == 3
    assert mono_complete_between(pentagon, [0], [1, 2]) is None  # colors 1 and 2
    assert mono_complete_between(pentagon, [0], [1]) == 1
    with pytest.raises(ValueError):
        mono_complete_between(j, [0, 5], [5, 6])
    with pytest.raises(ValueError):
        mono_complete_between(j, [], [1])


def test_wheel_from_mono_pair_example():
    c = mono(5)
    hit = wheel_from_mono_pair(c, 3, 4, 1)
    assert hit is not None
    assert hit.vertex_map == (0, 3, 2, 4, 1)  # rim v1 x v3 y, hub v2
    assert hit.check(c)


def test_wheel_from_mono_pair_precondition():
    c = EdgeColoring(4, 2, [1, 1, 1, 1, 2, 1])  # edge (1,2) breaks completeness
    with pytest.raises(PreconditionError):
        wheel_from_mono_pair(c, 0, 3, 1)
    with pytest.raises(ValueError):
        wheel_from_mono_pair(c, 0, 0, 1)


def test_wheel_from_mono_pair_without_path():
    # rest of the graph holds no color-1 path on three vertices
    c = EdgeColoring(4, 2, [1, 1, 1, 1, 1, 2])  # only edge (2,3) differs
    assert wheel_from_mono_pair(c, 0, 1, 1) is None
    # two vertices only: the rest is empty, trivially complete, no path
    assert wheel_from_mono_pair(EdgeColoring(2, 1, [1]), 0, 1, 1) is None


def test_wheel_from_mono_pair_agrees_with_detector():
    rng = random.Random(17)
    found_both_ways = 0
    for trial in range(60):
        n = rng.randint(3, 9)
        k = rng.randint(1, 3)
        inner = oracles.arbitrary_coloring(n, k, trial + 3000)
        color = rng.randint(1, k)
        # plant x, y joined to everything (and each other) in `color`
        flat = []
        for u in range(n + 2):
            for v in range(u + 1, n + 2):
                flat.append(inner.color_of(u, v) if v < n else color)
        c = EdgeColoring(n + 2, k, flat)
        x, y = n, n + 1
        emb = wheel_from_mono_pair(c, x, y, color)
        rest = restrict(c, range(n))
        if has_mono_p3_in_color(rest, color):
            assert emb is not None and emb.check(c)
            assert find_mono(c, W4, color) is not None
            found_both_ways += 1
        else:
            assert emb is None
    assert found_both_ways > 10
