import random
from functools import lru_cache
from itertools import combinations, product

import pytest

from plcc.constructions import complete, cycle, diamond, g8, gadget_h, h_family, path
from plcc.graph import Graph
from plcc.listcolor import (
    CHOOSABLE,
    INCONCLUSIVE,
    NOT_CHOOSABLE,
    AssignmentFormatError,
    canonical_assignments,
    default_palette_sizes,
    format_assignment,
    is_choosable,
    is_list_colorable,
    list_chromatic_number,
    max_colorable_subgraph,
    parse_assignment,
    random_assignment,
    read_assignment,
    sample_choosability,
    uniform_lists,
    validate_coloring,
)
from plcc.structure import is_two_choosable

EDGE = Graph.from_edges(2, [(0, 1)])


def lists_of(*rows):
    return {v: frozenset(r) for v, r in enumerate(rows)}


def orbit_key(lists, n):
    """Colors are interchangeable, vertices are not: the multiset of per-color
    membership patterns identifies a renaming class."""
    colors = {c for v in range(n) for c in lists[v]}
    return tuple(sorted(tuple(v for v in range(n) if c in lists[v]) for c in colors))


def brute_colorable(g, lists):
    return any(
        all(c[u] != c[v] for u, v in g.edges)
        for c in product(*(sorted(lists[v]) for v in range(g.n)))
    )


# -- is_list_colorable ------------------------------------------------------


def test_triangle_two_colors_is_not_colorable():
    assert is_list_colorable(complete(3), uniform_lists(3, {1, 2})) is None


def test_diamond_2232_example():
    lists = lists_of({1, 2}, {1, 2}, {1, 2, 3}, {1, 2})
    col = is_list_colorable(diamond(), lists)
    assert validate_coloring(diamond(), lists, col) and len(col) == 4


def test_g8_equal_lists_example():
    lists = lists_of({1, 2}, {1, 3}, {1, 2}, {1, 2}, {2, 3}, {1, 2})
    col = is_list_colorable(g8(), lists)
    assert col is not None and validate_coloring(g8(), lists, col)


def test_missing_list_is_an_input_error():
    with pytest.raises(ValueError):
        is_list_colorable(EDGE, {0: frozenset({1})})


def test_empty_list_is_uncolorable():
    assert is_list_colorable(EDGE, lists_of(set(), {1})) is None


@pytest.mark.parametrize("seed", range(60))
def test_colorable_matches_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    g = Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < 0.5])
    lists = random_assignment(n, rng.randint(1, 3), rng.randint(3, 5), rng)
    col = is_list_colorable(g, lists)
    assert (col is not None) == brute_colorable(g, lists)
    if col is not None:
        assert validate_coloring(g, lists, col) and set(col) == set(range(n))


def test_validate_coloring_rejects_bad_colorings():
    lists = lists_of({1, 2}, {1, 2})
    assert not validate_coloring(EDGE, lists, {0: 1, 1: 1})
    assert not validate_coloring(EDGE, lists, {0: 3})
    assert validate_coloring(EDGE, lists, {0: 1})


# -- max_colorable_subgraph -------------------------------------------------


@pytest.mark.parametrize(
    "g, colors, size",
    [(complete(3), {1}, 1), (complete(3), {1, 2}, 2), (cycle(4), {1}, 2), (Graph(0), {1}, 0)],
)
def test_max_colorable_examples(g, colors, size):
    verts, col = max_colorable_subgraph(g, uniform_lists(g.n, colors))
    assert len(verts) == size and validate_coloring(g, uniform_lists(g.n, colors), col)


@pytest.mark.parametrize("seed", range(40))
def test_max_colorable_matches_brute_force(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(1, 7)
    g = Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < 0.6])
    lists = random_assignment(n, rng.randint(1, 2), rng.randint(2, 4), rng)
    verts, col = max_colorable_subgraph(g, lists)
    assert validate_coloring(g, lists, col) and set(col) == verts
    best = max(
        k
        for k in range(n + 1)
        for s in combinations(range(n), k)
        if brute_colorable(g.induced(s)[0], {i: lists[v] for i, v in enumerate(s)})
    )
    assert len(verts) == best


# -- canonical enumeration --------------------------------------------------


def quotient_count(n, sizes):
    cap = sum(sizes)
    keys = set()
    for rows in product(*(combinations(range(cap), s) for s in sizes)):
        keys.add(orbit_key(dict(enumerate(map(frozenset, rows))), n))
    return len(keys)


@pytest.mark.parametrize(
    "g, sizes, count",
    [(EDGE, (1, 1), 2), (Graph(1), (2,), 1), (EDGE, (2, 2), 3), (EDGE, (1, 2), 2), (Graph(0), (), 1)],
)
def test_canonical_counts(g, sizes, count):
    assert len(list(canonical_assignments(g, sizes))) == count


@pytest.mark.parametrize(
    "n, sizes",
    [(1, (3,)), (2, (2, 2)), (2, (3, 3)), (2, (1, 3)), (3, (2, 2, 2)), (3, (1, 2, 3)), (3, (1, 1, 1)), (3, (2, 2, 1))],
)
def test_canonical_stream_is_one_per_class(n, sizes):
    g = Graph(n)
    keys = [orbit_key(a, n) for a in canonical_assignments(g, sizes)]
    assert len(keys) == len(set(keys)) == quotient_count(n, sizes)
    for a in canonical_assignments(g, sizes):
        assert [len(a[v]) for v in range(n)] == list(sizes)


def multiset_count(n, size):
    """Multisets of nonempty vertex subsets covering each vertex exactly ``size`` times."""
    subsets = list(range(1, 1 << n))

    @lru_cache(maxsize=None)
    def rec(demand, start):
        if all(d == 0 for d in demand):
            return 1
        total = 0
        for i in range(start, len(subsets)):
            s = subsets[i]
            if all(demand[v] > 0 for v in range(n) if s >> v & 1):
                nxt = tuple(d - (s >> v & 1) for v, d in enumerate(demand))
                total += rec(nxt, i)
        return total

    return rec(tuple([size] * n), 0)


def test_g8_two_lists_class_count():
    count = sum(1 for _ in canonical_assignments(g8(), [2] * 6))
    assert count == 29388 == multiset_count(6, 2)


def test_order_and_ties_respected():
    order = [3, 2, 1, 0]
    a = list(canonical_assignments(Graph(4), [2] * 4, order=order, equal={0: 3}))
    assert all(x[0] == x[3] for x in a)
    assert len(a) == len({orbit_key(x, 4) for x in a})


# -- is_choosable -----------------------------------------------------------


def test_diamond_profiles():
    assert is_choosable(diamond(), [2, 2, 3, 2]).status == CHOOSABLE
    v = is_choosable(diamond(), [2, 2, 2, 2])
    assert v.status == NOT_CHOOSABLE
    assert is_list_colorable(diamond(), v.witness) is None


def test_g8_is_not_two_choosable_with_verified_witness():
    v = is_choosable(g8(), [2] * 6)
    assert v.status == NOT_CHOOSABLE and not v.choosable
    assert is_list_colorable(g8(), v.witness) is None
    assert all(len(v.witness[x]) == 2 for x in range(6))


def test_g8_with_l1_equal_l4_is_colorable():
    assert is_choosable(g8(), [2] * 6, equal={3: 0}).status == CHOOSABLE


@pytest.mark.parametrize("g", [cycle(4), cycle(6), path(5), Graph(1), Graph(0)])
def test_two_choosable_graphs(g):
    assert is_choosable(g, [2] * g.n).status == CHOOSABLE


def test_budget_exhaustion_is_inconclusive():
    v = is_choosable(h_family(1), [3] * 8, budget=10)
    assert v.status == INCONCLUSIVE and not v.choosable
    assert is_choosable(diamond(), [2, 2, 3, 2], budget=0).status == INCONCLUSIVE


def test_input_validation():
    with pytest.raises(ValueError):
        is_choosable(EDGE, [2])
    with pytest.raises(ValueError):
        is_choosable(EDGE, [0, 1])
    with pytest.raises(ValueError):
        is_choosable(EDGE, [1, 1], order=[0, 0])
    with pytest.raises(ValueError):
        is_choosable(EDGE, [1, 2], equal={1: 0})


def brute_choosable(g, sizes):
    return all(is_list_colorable(g, a) is not None for a in canonical_assignments(g, sizes))


@pytest.mark.parametrize("seed", range(40))
def test_decider_matches_plain_enumeration(seed):
    rng = random.Random(200 + seed)
    n = rng.randint(1, 5)
    g = Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < 0.6])
    sizes = [rng.randint(1, 3) for _ in range(n)]
    want = brute_choosable(g, sizes)
    for certificates in (True, False):
        v = is_choosable(g, sizes, certificates=certificates)
        assert v.choosable == want
        if not want:
            assert is_list_colorable(g, v.witness) is None
            assert [len(v.witness[x]) for x in range(n)] == sizes


@pytest.mark.parametrize("seed", range(25))
def test_monotone_in_profile(seed):
    rng = random.Random(300 + seed)
    n = rng.randint(2, 5)
    g = Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < 0.6])
    sizes = [rng.randint(1, 3) for _ in range(n)]
    if is_choosable(g, sizes).choosable:
        bigger = [s + rng.randint(0, 1) for s in sizes]
        assert is_choosable(g, bigger).choosable


# -- derived deciders -------------------------------------------------------


def test_two_choosable_examples():
    sub, _ = gadget_h().induced([2, 3, 4, 5, 6])
    assert is_two_choosable(sub)
    assert not is_two_choosable(g8())
    assert is_two_choosable(Graph(1))


def test_list_chromatic_examples():
    assert list_chromatic_number(cycle(4)).value == 2
    assert list_chromatic_number(cycle(4)).method == "core-characterization"
    assert list_chromatic_number(diamond()).value == 3
    assert list_chromatic_number(complete(4)).value == 4
    assert list_chromatic_number(Graph(3)).value == 1
    assert list_chromatic_number(Graph(0)).value == 0
    # the H gadget's 3-lists are beyond a small exhaustive budget
    lc = list_chromatic_number(h_family(1), budget=1000)
    assert (lc.value, lc.low, lc.high, lc.method) == (None, 3, 4, "bounded")


def test_sampling_finds_g8_counterexample():
    res = sample_choosability(g8(), [2] * 6, 10_000, palette_sizes=[4], seed=7)
    assert res.failures and res.per_palette[4] > 0
    assert all(is_list_colorable(g8(), f) is None for f in res.failures)


def test_sampling_c4_never_fails():
    res = sample_choosability(cycle(4), [2] * 4, 2000, seed=1)
    assert res.tried == 2000 * len(default_palette_sizes([2] * 4)) and not res.failures


def test_sampling_h_three_lists():
    res = sample_choosability(h_family(1), [3] * 8, 20_000, palette_sizes=[9], seed=3)
    assert res.tried == 20_000 and not res.failures


def test_sampling_is_deterministic_and_checks_palettes():
    a = sample_choosability(g8(), [2] * 6, 300, palette_sizes=[3, 4], seed=5)
    b = sample_choosability(g8(), [2] * 6, 300, palette_sizes=[3, 4], seed=5)
    assert a.per_palette == b.per_palette and a.failures == b.failures
    with pytest.raises(ValueError):
        sample_choosability(g8(), [2] * 6, 1, palette_sizes=[1])


def test_default_palettes():
    assert default_palette_sizes([2, 2, 3, 2]) == [4, 6, 9]


# -- assignment format ------------------------------------------------------


def test_assignment_round_trip(tmp_path):
    lists = lists_of({0, 5}, {2}, {1, 3, 4}, set())
    text = format_assignment(lists)
    assert text == "1: 0 5\n2: 2\n3: 1 3 4\n4: \n"
    assert parse_assignment(text.splitlines()) == lists
    p = tmp_path / "a.lst"
    p.write_text("# header\n\n" + text)
    assert read_assignment(p, 4) == lists


@pytest.mark.parametrize(
    "lines, lineno",
    [(["1 2 3"], 1), (["1: a"], 1), (["0: 1"], 1), (["# c", "5: 1"], 2), (["1: -1"], 1), (["1: 1", "1: 2"], 2)],
)
def test_assignment_errors(lines, lineno):
    with pytest.raises(AssignmentFormatError) as info:
        parse_assignment(lines, n=4)
    assert info.value.lineno == lineno
