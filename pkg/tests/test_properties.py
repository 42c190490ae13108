"""Randomized properties over small graphs and list assignments."""

import random
from fractions import Fraction
from math import ceil

import networkx as nx
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from plcc.algorithms import (
    bounds_report,
    partial_color_chordal,
    partial_color_chordless,
    partial_color_clawfree,
    partial_color_tw2,
)
from plcc.constructions import random_chordal, random_chordless, random_clawfree, random_series_parallel
from plcc.graph import Graph, format_graph, parse_graph
from plcc.listcolor import (
    format_assignment,
    is_list_colorable,
    max_colorable_subgraph,
    parse_assignment,
    validate_coloring,
)
from plcc.structure import core_reduce, degeneracy_order, is_two_choosable, optimal_coloring

SETTINGS = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


@st.composite
def graphs_with_lists(draw, max_n=7, max_size=3, palette=4):
    g = draw(graphs(max_n))
    lists = {
        v: frozenset(draw(st.sets(st.integers(1, palette), min_size=1, max_size=max_size)))
        for v in range(g.n)
    }
    return g, lists


def lists_for(g, t, palette, seed):
    rng = random.Random(seed)
    return {v: frozenset(rng.sample(range(1, palette + 1), t)) for v in range(g.n)}


@SETTINGS
@given(graphs())
def test_format_parse_round_trip(g):
    assert parse_graph(format_graph(g).splitlines()) == g


@SETTINGS
@given(graphs_with_lists())
def test_assignment_round_trip(gl):
    _, lists = gl
    assert parse_assignment(format_assignment(lists).splitlines()) == lists


@SETTINGS
@given(graphs())
def test_core_is_idempotent_and_has_min_degree_two(g):
    core, ids = core_reduce(g)
    assert core_reduce(core)[0] == core
    assert all(core.degree(v) >= 2 or core.degree(v) == 0 for v in range(core.n))
    assert ids == sorted(ids)


@SETTINGS
@given(graphs())
def test_degeneracy_matches_networkx(g):
    expected = max(nx.core_number(_nx(g)).values(), default=0)
    assert degeneracy_order(g).width == expected


@SETTINGS
@given(graphs())
def test_optimal_coloring_is_proper_and_minimal(g):
    k, col = optimal_coloring(g)
    assert all(col[u] != col[v] for u, v in g.edges)
    assert len(set(col)) == k
    if k > 1:
        assert not _k_colorable(g, k - 1)


@SETTINGS
@given(graphs_with_lists())
def test_list_coloring_is_valid_when_found(gl):
    g, lists = gl
    col = is_list_colorable(g, lists)
    if col is not None:
        assert set(col) == set(range(g.n)) and validate_coloring(g, lists, col)
    best, part = max_colorable_subgraph(g, lists)
    assert validate_coloring(g, lists, part) and set(part) == best
    assert (len(best) == g.n) == (col is not None)


@SETTINGS
@given(graphs_with_lists(max_n=6))
def test_max_colorable_matches_subset_scan(gl):
    g, lists = gl
    best = max(
        (bin(mask).count("1") for mask in range(1 << g.n)
         if is_list_colorable(g, lists, [v for v in range(g.n) if mask >> v & 1]) is not None),
        default=0,
    )
    assert len(max_colorable_subgraph(g, lists)[0]) == best


@SETTINGS
@given(st.integers(2, 30), st.integers(2, 9), st.integers(1, 8), st.integers(2, 9))
def test_bounds_order(n, s, t, chi):
    if not t < s <= n:
        return
    b = bounds_report(n, s, t, chi)
    assert b.chappell < b.conjecture and b.haas <= b.conjecture
    assert b.albertson == (1 - Fraction(chi - 1, chi) ** t) * n


@SETTINGS
@given(st.integers(1, 12), st.integers(0, 10**6))
def test_two_choosable_graphs_color_from_every_2_assignment(n, seed):
    g = random_chordless(n, seed)
    if not is_two_choosable(g):
        return
    for k in range(5):
        assert is_list_colorable(g, lists_for(g, 2, 3, seed + k)) is not None


@SETTINGS
@given(st.integers(2, 12), st.integers(0, 10**6))
def test_chordless_meets_two_thirds(n, seed):
    g = random_chordless(n, seed)
    pc = partial_color_chordless(g, lists_for(g, 2, 4, seed))
    assert validate_coloring(g, lists_for(g, 2, 4, seed), pc.coloring)
    assert pc.size >= ceil(Fraction(2 * n, 3))


@SETTINGS
@given(st.integers(2, 12), st.integers(1, 4), st.integers(0, 10**6))
def test_chordal_meets_target(n, k, seed):
    g = random_chordal(n, k, seed)
    omega = max(len(c) for c in nx.find_cliques(_nx(g)))
    for t in range(1, omega):
        lists = lists_for(g, t, omega + 2, seed)
        pc = partial_color_chordal(g, lists)
        assert validate_coloring(g, lists, pc.coloring)
        assert pc.size >= ceil(Fraction(t * n, omega))


@SETTINGS
@given(st.integers(3, 12), st.integers(0, 10**6))
def test_tw2_meets_target(n, seed):
    g = random_series_parallel(n, seed)
    lists = lists_for(g, 2, 4, seed)
    pc = partial_color_tw2(g, lists)
    assert validate_coloring(g, lists, pc.coloring)
    assert pc.size >= ceil(Fraction(2 * n, 3))


@SETTINGS
@given(st.integers(2, 10), st.integers(0, 10**6))
def test_clawfree_meets_target(n, seed):
    g = random_clawfree(n, seed)
    s = degeneracy_order(g).width + 1
    for t in range(1, s):
        lists = lists_for(g, t, s + 1, seed)
        pc = partial_color_clawfree(g, lists, s)
        assert validate_coloring(g, lists, pc.coloring)
        assert pc.size >= ceil(Fraction(t * g.n, s))


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def _k_colorable(g, k):
    col = {}

    def go(v):
        if v == g.n:
            return True
        for c in range(k):
            if all(col.get(w) != c for w in g.adj[v]):
                col[v] = c
                if go(v + 1):
                    return True
                del col[v]
        return False

    return go(0)
