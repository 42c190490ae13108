"""Named graphs (diamond, G8, the H gadget family, theta graphs) and seeded
random generators for the graph classes the algorithms cover."""

from __future__ import annotations

import random
from itertools import combinations

from .graph import Graph
from .structure import classify_two_choosable_core

# v1..v8 of one gadget, 1-based as drawn
GADGET_EDGES = (
    (1, 2), (1, 3), (1, 4), (2, 3), (3, 4),
    (2, 5), (2, 7), (3, 6), (4, 7),
    (5, 6), (6, 7), (5, 8), (6, 8), (7, 8),
)
GADGET_TRIANGLES = ((1, 2, 3), (1, 3, 4), (5, 6, 8), (6, 7, 8))
GADGET_HITTING_SETS = ((1, 6), (1, 8), (3, 6), (3, 8))


def diamond() -> Graph:
    """K4 minus the edge v2v4; v1 and v3 have degree 3."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)])


def g8() -> Graph:
    """Two 4-cycles v1v2v5v4 and v2v3v6v5 sharing the edge v2v5."""
    pairs = [(1, 2), (2, 3), (1, 4), (2, 5), (3, 6), (4, 5), (5, 6)]
    return Graph.from_edges(6, [(a - 1, b - 1) for a, b in pairs])


def gadget_h(template=GADGET_EDGES) -> Graph:
    return h_family(1, template)


def gadget_vertex(i: int, j: int) -> int:
    """Id of v_{i,j} (both 1-based)."""
    return 8 * (i - 1) + (j - 1)


def h_family(r: int, template=GADGET_EDGES) -> Graph:
    """r gadgets chained through consecutive v8 vertices: 8r vertices."""
    if r < 1:
        raise ValueError("r must be at least 1")
    edges = []
    for i in range(1, r + 1):
        edges.extend((gadget_vertex(i, a), gadget_vertex(i, b)) for a, b in template)
        if i < r:
            edges.append((gadget_vertex(i, 8), gadget_vertex(i + 1, 8)))
    return Graph.from_edges(8 * r, edges)


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(k: int) -> Graph:
    return complete_bipartite(1, k)


def cocktail_party(k: int) -> Graph:
    """K_{2k} minus a perfect matching {2i, 2i+1}."""
    return Graph.from_edges(
        2 * k, [(a, b) for a, b in combinations(range(2 * k), 2) if a // 2 != b // 2]
    )


def theta(a: int = 2, b: int = 2, c: int = 2) -> Graph:
    """Two hubs (ids 0 and 1) joined by internally disjoint paths of lengths a, b, c."""
    lengths = (a, b, c)
    if min(lengths) < 1 or sum(1 for x in lengths if x == 1) > 1:
        raise ValueError("path lengths must be positive with at most one direct edge")
    edges = []
    nxt = 2
    for length in lengths:
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph.from_edges(nxt, edges)


def theta_even(k: int) -> Graph:
    """theta(2, 2, 2k)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return theta(2, 2, 2 * k)


def line_graph(g: Graph) -> Graph:
    """Vertices are the edges of g in sorted order; adjacent when they share an end."""
    es = g.sorted_edges()
    pairs = [
        (i, j)
        for i, j in combinations(range(len(es)), 2)
        if set(es[i]) & set(es[j])
    ]
    return Graph.from_edges(len(es), pairs)


def subdivide_all(g: Graph) -> Graph:
    """Insert one new vertex (id n + edge index) on every edge."""
    edges = []
    for idx, (u, v) in enumerate(g.sorted_edges()):
        w = g.n + idx
        edges.extend([(u, w), (w, v)])
    return Graph.from_edges(g.n + g.m, edges)


# -- random families --------------------------------------------------------


def random_graph(n: int, m: int, rng: random.Random, connected: bool = False) -> Graph:
    pairs = list(combinations(range(n), 2))
    if m > len(pairs) or (connected and n > 0 and m < n - 1):
        raise ValueError(f"cannot place {m} edges on {n} vertices")
    edges = set()
    if connected:
        perm = list(range(n))
        rng.shuffle(perm)
        for i in range(1, n):
            a, b = perm[i], perm[rng.randrange(i)]
            edges.add((min(a, b), max(a, b)))
    rest = [p for p in pairs if p not in edges]
    edges.update(rng.sample(rest, m - len(edges)))
    return Graph.from_edges(n, edges)


def random_connected_graph(n: int, seed: int, p: float = 0.5) -> Graph:
    """Random spanning tree plus each remaining pair with probability p."""
    rng = random.Random(seed)
    g = random_graph(n, max(n - 1, 0), rng, connected=True)
    extra = [e for e in combinations(range(n), 2) if e not in g.edges and rng.random() < p]
    return Graph.from_edges(n, list(g.edges) + extra)


def random_chordal(n: int, k: int, seed: int) -> Graph:
    """Partial k-tree: each new vertex attaches to a random nonempty subset of a
    clique already present, so every step keeps a perfect elimination order."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    rng = random.Random(seed)
    base = min(n, k + 1)
    edges = list(combinations(range(base), 2))
    cliques = [tuple(range(base))]
    for v in range(base, n):
        host = rng.choice(cliques)
        size = rng.randint(1, min(k, len(host)))
        attach = tuple(sorted(rng.sample(host, size)))
        edges.extend((u, v) for u in attach)
        cliques.append(attach + (v,))
    return Graph.from_edges(n, edges)


def random_series_parallel_trace(n: int, seed: int) -> tuple[Graph, list]:
    """Grow from a single edge by series steps (subdivide an edge) and parallel
    steps (add a 2-path beside an edge); returns the graph and the step log."""
    if n < 2:
        raise ValueError("series-parallel generation needs n >= 2")
    rng = random.Random(seed)
    edges = [(0, 1)]
    log = []
    for v in range(2, n):
        a, b = rng.choice(edges)
        if rng.random() < 0.5:
            edges.remove((a, b))
            log.append(("series", a, b, v))
        else:
            log.append(("parallel", a, b, v))
        edges.extend([(a, v), (v, b)])
    return Graph.from_edges(n, edges), log


def random_series_parallel(n: int, seed: int) -> Graph:
    return random_series_parallel_trace(n, seed)[0]


def random_chordless(n: int, seed: int) -> Graph:
    """Subdivide every edge of a random seed graph with n0 + m0 = n."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    options = [n0 for n0 in range(1, n + 1) if n - n0 <= n0 * (n0 - 1) // 2]
    n0 = rng.choice(options)
    m0 = n - n0
    seedg = random_graph(n0, m0, rng, connected=m0 >= n0 - 1)
    return subdivide_all(seedg)


def random_two_connected(n: int, seed: int, extra: int = 0) -> Graph:
    """Random cycle grown by ears, plus ``extra`` chords; always 2-connected."""
    if n < 3:
        raise ValueError("2-connected graphs need n >= 3")
    rng = random.Random(seed)
    c = rng.randint(3, n)
    edges = {(i, (i + 1) % c) for i in range(c)}
    nxt = c
    while nxt < n:
        a, b = rng.sample(range(nxt), 2)
        length = rng.randint(1, n - nxt)
        prev = a
        for _ in range(length):
            edges.add((prev, nxt))
            prev = nxt
            nxt += 1
        edges.add((prev, b))
    g = Graph.from_edges(n, edges)
    free = [e for e in combinations(range(n), 2) if e not in g.edges]
    chords = rng.sample(free, min(extra, len(free)))
    return Graph.from_edges(n, list(g.edges) + chords)


def random_clawfree(n: int, seed: int) -> Graph:
    """Line graph of a random graph with n edges (so n vertices)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    rng = random.Random(seed)
    low = 2
    while low * (low - 1) // 2 < n:
        low += 1
    nv = rng.randint(low, max(low, n + 1))
    return line_graph(random_graph(nv, n, rng))


# -- gadget layout checks ---------------------------------------------------


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    return [
        (a, b, c)
        for a, b, c in combinations(range(g.n), 3)
        if g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c)
    ]


def contains_subgraph(host: Graph, pattern: Graph) -> dict[int, int] | None:
    """An injective map of pattern vertices into host preserving pattern edges."""
    order = sorted(range(pattern.n), key=lambda v: -pattern.degree(v))
    image: dict[int, int] = {}
    used = set()

    def rec(i):
        if i == len(order):
            return True
        p = order[i]
        for h in range(host.n):
            if h in used or host.degree(h) < pattern.degree(p):
                continue
            if all(host.has_edge(h, image[q]) for q in pattern.adj[p] if q in image):
                image[p] = h
                used.add(h)
                if rec(i + 1):
                    return True
                del image[p]
                used.discard(h)
        return False

    return dict(image) if rec(0) else None


def gadget_layout_checks(r: int, template=GADGET_EDGES) -> dict[str, bool]:
    """Structural facts the counterexample argument needs, per check name."""
    h = h_family(r, template)
    out = {"edge_count": h.m == 14 * r + (r - 1)}
    expected_tri = {tuple(j - 1 for j in t) for t in GADGET_TRIANGLES}
    tri_ok = hit_ok = deg_ok = g8_ok = core_ok = True
    pattern = g8()
    for i in range(1, r + 1):
        verts = [gadget_vertex(i, j) for j in range(1, 9)]
        sub, ids = h.induced(verts)
        tri = {tuple(ids[x] - verts[0] for x in t) for t in triangles(sub)}
        tri_ok &= tri == expected_tri
        hitting = {
            pair for pair in combinations(range(8), 2)
            if all(set(pair) & set(t) for t in tri)
        } if tri else set()
        hit_ok &= hitting == {(a - 1, b - 1) for a, b in GADGET_HITTING_SETS}
        degs = [sub.degree(v) for v in range(8)]
        deg_ok &= degs == [3, 4, 4, 3, 3, 4, 4, 3]
        for a, b in GADGET_HITTING_SETS:
            rest, _ = sub.remove([a - 1, b - 1])
            g8_ok &= contains_subgraph(rest, pattern) is not None
        mid, _ = sub.induced(range(2, 7))
        cls = classify_two_choosable_core(mid)
        tags = [str(c) for _, c in cls.components]
        core_ok &= tags == ["EvenCycle(2)"]
    chain = all(
        h.has_edge(gadget_vertex(i, 8), gadget_vertex(i + 1, 8)) for i in range(1, r)
    )
    out.update(
        triangles=tri_ok,
        hitting_sets=hit_ok,
        degrees=deg_ok,
        g8_supergraph=g8_ok,
        c4_core=core_ok,
        chain=chain,
    )
    return out


NAMED = {
    "diamond": lambda a: diamond(),
    "g8": lambda a: g8(),
    "gadget_h": lambda a: gadget_h(),
    "h_family": lambda a: h_family(a.r),
    "theta": lambda a: theta_even(a.k),
    "cycle": lambda a: cycle(a.n),
    "path": lambda a: path(a.n),
    "complete": lambda a: complete(a.n),
    "cocktail_party": lambda a: cocktail_party(a.k),
    "random_chordal": lambda a: random_chordal(a.n, a.k, a.seed),
    "random_series_parallel": lambda a: random_series_parallel(a.n, a.seed),
    "random_chordless": lambda a: random_chordless(a.n, a.seed),
    "random_clawfree": lambda a: random_clawfree(a.n, a.seed),
}
