import random

import pytest

from gallai import (
    ApexSequence,
    EdgeColoring,
    GallaiPartition,
    PatternSpec,
    PreconditionError,
    build_lower_bound_witness,
    canonical_digest,
    check_apex_color_distinctness,
    cross_color_profile,
    find_gallai_partition,
    find_mono,
    join,
    load_base14,
    peel_apex_sequence,
    pentagon_coloring,
    random_gallai,
    recolor,
    reduced_graph,
    verify_gallai_partition,
)

W4 = PatternSpec.wheel(4)


def mono(n, color=1):
    return EdgeColoring(n, color, [color] * (n * (n - 1) // 2))


@pytest.fixture(scope="module")
def witness4():
    w, _ = build_lower_bound_witness(4, load_base14())
    return w


def test_verify_accepts_join_halves(pentagon):
    j = join(pentagon, pentagon, 3)
    check = verify_gallai_partition(j, [range(5), range(5, 10)])
    assert check.ok and check.violations == ()


def test_verify_singletons_of_two_coloring(pentagon):
    check = verify_gallai_partition(pentagon, [[v] for v in range(5)])
    assert check.ok


def test_verify_flags_rainbow_singletons():
    rainbow = EdgeColoring(3, 3, [1, 2, 3])
    check = verify_gallai_partition(rainbow, [[0], [1], [2]])
    assert not check.ok
    assert any("3 colors" in v for v in check.violations)


def test_verify_flags_bichromatic_pair(pentagon):
    check = verify_gallai_partition(pentagon, [[0, 1], [2, 3, 4]])
    assert not check.ok
    assert any("joined in colors" in v for v in check.violations)


def test_verify_rejects_malformed(pentagon):
    with pytest.raises(ValueError):
        verify_gallai_partition(pentagon, [[0, 1], [1, 2, 3, 4]])  # overlap
    with pytest.raises(ValueError):
        verify_gallai_partition(pentagon, [[0, 1], [2, 3]])  # missing vertex
    with pytest.raises(ValueError):
        verify_gallai_partition(pentagon, [[0, 1, 2, 3, 4], []])  # empty part
    with pytest.raises(ValueError):
        verify_gallai_partition(pentagon, [[0, 1], [2, 3, 9]])  # out of range


def test_verify_checks_claimed_fields(pentagon):
    j = join(pentagon, pentagon, 3)
    good = find_gallai_partition(j)
    assert verify_gallai_partition(j, good).ok
    bad_reduced = GallaiPartition(
        good.parts, good.cross_colors, EdgeColoring(2, 3, [1])
    )
    check = verify_gallai_partition(j, bad_reduced)
    assert not check.ok
    bad_cross = GallaiPartition(good.parts, frozenset({1}), good.reduced)
    assert not verify_gallai_partition(j, bad_cross).ok


def test_find_partition_of_join(pentagon):
    j = join(pentagon, pentagon, 3)
    part = find_gallai_partition(j)
    assert part.p == 2
    assert part.parts == (tuple(range(5)), tuple(range(5, 10)))
    assert part.cross_colors == {3}
    assert part.reduced == EdgeColoring(2, 3, [3])


def test_find_partition_two_colors_gives_singletons(base14):
    part = find_gallai_partition(base14)
    assert part.p == 14
    assert all(len(p) == 1 for p in part.parts)
    # contracting singletons reproduces the coloring exactly
    assert part.reduced == base14
    assert canonical_digest(part.reduced) == canonical_digest(base14)


def test_find_partition_witness4_recovers_pentagon(witness4):
    part = find_gallai_partition(witness4)
    assert part.p == 5
    assert [len(p) for p in part.parts] == [14] * 5
    assert part.cross_colors == {3, 4}
    expected = recolor(pentagon_coloring(), {1: 3, 2: 4}, k=4)
    assert canonical_digest(part.reduced) == canonical_digest(expected)


def test_find_partition_preconditions():
    with pytest.raises(PreconditionError):
        find_gallai_partition(EdgeColoring(3, 3, [1, 2, 3]))
    with pytest.raises(ValueError):
        find_gallai_partition(EdgeColoring(1, 1, []))


def test_find_partition_fuzz_valid_and_narrow():
    rng = random.Random(3021)
    for trial in range(60):
        n = rng.randint(2, 40)
        k = rng.randint(1, 6)
        c = random_gallai(n, k, trial + 50_000)
        part = find_gallai_partition(c)
        assert part.p >= 2
        assert verify_gallai_partition(c, part).ok
        assert len(part.cross_colors) <= 2
        assert part.reduced.colors_used() == part.cross_colors


def test_reduced_graph_matches_partition(witness4):
    part = find_gallai_partition(witness4)
    red = reduced_graph(witness4, part.parts)
    assert red == part.reduced
    with pytest.raises(ValueError):
        reduced_graph(witness4, [range(35), range(35, 70)])  # not monochromatic


def test_reduced_graph_rejects_invalid(pentagon):
    with pytest.raises(ValueError):
        reduced_graph(pentagon, [[0, 1], [2, 3, 4]])


def test_peel_monochromatic_clique():
    seq = peel_apex_sequence(mono(6))
    assert seq.entries == tuple((v, 1) for v in range(5))
    assert seq.remainder == (5,)


def test_peel_pentagon_has_no_apex(pentagon):
    seq = peel_apex_sequence(pentagon)
    assert seq.entries == ()
    assert seq.remainder == (0, 1, 2, 3, 4)


def test_peel_single_apex_then_pentagon(pentagon):
    c = join(EdgeColoring(1, 2, []), pentagon, 3)
    seq = peel_apex_sequence(c)
    assert seq.entries == ((0, 3),)
    assert seq.remainder == (1, 2, 3, 4, 5)


def test_peel_is_maximal():
    rng = random.Random(77)
    for trial in range(40):
        c = random_gallai(rng.randint(2, 25), rng.randint(1, 4), trial + 7_000)
        seq = peel_apex_sequence(c)
        rest = set(seq.remainder)
        if len(rest) < 2:
            continue
        for x in seq.remainder:
            others = rest - {x}
            colors = {c.color_of(x, y) for y in others}
            assert len(colors) > 1  # no leftover apex


def test_peel_replays_consistently():
    rng = random.Random(78)
    for trial in range(30):
        c = random_gallai(rng.randint(2, 20), rng.randint(1, 4), trial + 8_000)
        seq = peel_apex_sequence(c)
        assert check_apex_color_distinctness(c, seq) in (True, False)


def test_apex_distinctness_on_wheel_free_samples():
    rng = random.Random(80)
    checked = 0
    for trial in range(200):
        c = random_gallai(rng.randint(3, 14), rng.randint(1, 4), trial + 9_000)
        if find_mono(c, W4) is not None:
            continue
        seq = peel_apex_sequence(c)
        assert check_apex_color_distinctness(c, seq)
        checked += 1
    assert checked > 50


def test_apex_distinctness_with_wheel_present():
    # repeated apex colors and paths galore, but the wheel is there, so
    # the implication holds
    c = mono(6)
    seq = peel_apex_sequence(c)
    assert check_apex_color_distinctness(c, seq)


def test_apex_distinctness_rejects_bogus_sequences(pentagon):
    with pytest.raises(ValueError):
        check_apex_color_distinctness(pentagon, ApexSequence(((0, 1),), (1, 2, 3, 4)))
    c = mono(4)
    with pytest.raises(ValueError):
        check_apex_color_distinctness(c, ApexSequence(((0, 1), (0, 1)), (2, 3)))
    with pytest.raises(ValueError):
        check_apex_color_distinctness(c, ApexSequence(((0, 1),), (1, 2)))  # bad rest


def test_cross_color_profile_on_witness(witness4):
    # relative to the first block, the pentagon row fixes who is joined
    # in color 3 and who in color 4
    block = range(14)
    blue, red, other = cross_color_profile(witness4, block, (4, 3))
    assert blue == tuple(range(14, 28)) + tuple(range(56, 70))  # color 3 complete
    assert red == tuple(range(28, 56))  # color 4 complete
    assert other == ()


def test_cross_color_profile_mixed(pentagon):
    j = join(pentagon, pentagon, 3)
    blue, red, other = cross_color_profile(j, range(5), (1, 3))
    assert blue == tuple(range(5, 10)) and red == () and other == ()
    # inside the pentagon nobody is complete to a 3-set in one color
    blue, red, other = cross_color_profile(pentagon, [0, 1, 2], (1, 2))
    assert blue == () and red == () and other == (3, 4)


def test_cross_color_profile_validation(pentagon):
    with pytest.raises(ValueError):
        cross_color_profile(pentagon, [], (1, 2))
    with pytest.raises(ValueError):
        cross_color_profile(pentagon, [0], (2, 2))
    with pytest.raises(ValueError):
        cross_color_profile(pentagon, [9], (1, 2))
