"""Structural recognition and decomposition: degeneracy, cores, claws, chordality,
chordless graphs, width-2 elimination, blocks, and exact chromatic number."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Graph, iter_bits


class StructureError(ValueError):
    """Input graph violates an operation's structural precondition."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class EliminationOrder:
    order: tuple[int, ...]
    width: int
    fill: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    leaf_blocks: tuple[int, ...]


@dataclass(frozen=True)
class CoreClass:
    tag: str  # "K1" | "EvenCycle" | "Theta22Even" | "Other"
    k: int | None = None

    def __str__(self):
        return self.tag if self.k is None else f"{self.tag}({self.k})"


@dataclass(frozen=True)
class CoreClassification:
    components: tuple[tuple[tuple[int, ...], CoreClass], ...]
    is_two_choosable: bool = field(init=False)

    def __post_init__(self):
        ok = all(c.tag != "Other" for _, c in self.components)
        object.__setattr__(self, "is_two_choosable", ok)


def back_degrees(g: Graph, order) -> list[int]:
    pos = {v: i for i, v in enumerate(order)}
    return [sum(1 for w in g.adj[v] if pos[w] > pos[v]) for v in order]


def degeneracy_order(g: Graph) -> EliminationOrder:
    """Minimum-degree elimination; ``order[i]`` has ``width`` or fewer neighbors after it."""
    deg = [g.degree(v) for v in range(g.n)]
    alive = [True] * g.n
    order = []
    width = 0
    for _ in range(g.n):
        v = min((u for u in range(g.n) if alive[u]), key=lambda u: (deg[u], u))
        width = max(width, deg[v])
        alive[v] = False
        order.append(v)
        for w in g.adj[v]:
            if alive[w]:
                deg[w] -= 1
    return EliminationOrder(tuple(order), width)


def core_reduce(g: Graph) -> tuple[Graph, list[int]]:
    """Delete degree-1 vertices one at a time (smallest id first) until none remain.

    A tree component erodes to a single vertex. Returns the core and the map
    from core ids to original ids.
    """
    deg = [g.degree(v) for v in range(g.n)]
    alive = [True] * g.n
    heap = [v for v in range(g.n) if deg[v] == 1]
    heapq.heapify(heap)
    while heap:
        v = heapq.heappop(heap)
        if not alive[v] or deg[v] != 1:
            continue
        alive[v] = False
        for w in g.adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    heapq.heappush(heap, w)
    return g.induced(v for v in range(g.n) if alive[v])


def _classify_connected(g: Graph) -> CoreClass:
    if g.n == 1:
        return CoreClass("K1")
    degs = [g.degree(v) for v in range(g.n)]
    if all(d == 2 for d in degs):
        if g.n % 2 == 0:
            return CoreClass("EvenCycle", g.n // 2)
        return CoreClass("Other")
    hubs = [v for v in range(g.n) if degs[v] == 3]
    if len(hubs) != 2 or any(d not in (2, 3) for d in degs):
        return CoreClass("Other")
    a, b = hubs
    lengths = []
    for start in g.adj[a]:
        prev, cur, length = a, start, 1
        while degs[cur] == 2:
            nxt = g.adj[cur][0] if g.adj[cur][0] != prev else g.adj[cur][1]
            prev, cur, length = cur, nxt, length + 1
        if cur != b:
            return CoreClass("Other")
        lengths.append(length)
    lengths.sort()
    if lengths[0] == lengths[1] == 2 and lengths[2] % 2 == 0:
        return CoreClass("Theta22Even", lengths[2] // 2)
    return CoreClass("Other")


def classify_two_choosable_core(g: Graph) -> CoreClassification:
    """Match the core of every component against K1, C_2k and theta(2,2,2k)."""
    core, ids = core_reduce(g)
    out = []
    for comp in core.components():
        sub, _ = core.induced(comp)
        out.append((tuple(ids[v] for v in comp), _classify_connected(sub)))
    return CoreClassification(tuple(out))


def is_two_choosable(g: Graph) -> bool:
    return classify_two_choosable_core(g).is_two_choosable


# -- claws ------------------------------------------------------------------


def find_claw(g: Graph) -> tuple[int, int, int, int] | None:
    """First induced K_{1,3} as (center, a, b, c), scanning centers by id."""
    for c in range(g.n):
        for a, b, d in combinations(g.adj[c], 3):
            if not (g.has_edge(a, b) or g.has_edge(a, d) or g.has_edge(b, d)):
                return (c, a, b, d)
    return None


def is_claw_free(g: Graph) -> bool:
    return find_claw(g) is None


# -- chordal graphs ---------------------------------------------------------


def is_perfect_elimination_order(g: Graph, order) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        if not g.is_clique(later):
            return False
    return True


def is_chordal(g: Graph) -> EliminationOrder | None:
    """Maximum cardinality search; returns a perfect elimination order or None."""
    weight = [0] * g.n
    numbered = [False] * g.n
    visit = []
    for _ in range(g.n):
        v = max((u for u in range(g.n) if not numbered[u]), key=lambda u: (weight[u], -u))
        numbered[v] = True
        visit.append(v)
        for w in g.adj[v]:
            if not numbered[w]:
                weight[w] += 1
    peo = tuple(reversed(visit))
    if not is_perfect_elimination_order(g, peo):
        return None
    width = max(back_degrees(g, peo), default=0)
    return EliminationOrder(peo, width)


def _bfs_path(adj_mask, src: int, dst: int, allowed: int) -> list[int] | None:
    parent = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            path = []
            while v is not None:
                path.append(v)
                v = parent[v]
            return path[::-1]
        for w in iter_bits(adj_mask[v] & allowed):
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return None


def find_induced_cycle(g: Graph, min_length: int = 4) -> list[int] | None:
    """An induced cycle of length >= 4, or None when the graph is chordal.

    For each vertex v and non-adjacent pair u, w of its neighbors, a shortest
    u-w path avoiding the rest of N[v] closes an induced cycle through v.
    """
    full = (1 << g.n) - 1
    for v in range(g.n):
        closed = g.masks[v] | (1 << v)
        for u, w in combinations(g.adj[v], 2):
            if g.has_edge(u, w):
                continue
            allowed = (full & ~closed) | (1 << u) | (1 << w)
            path = _bfs_path(g.masks, u, w, allowed)
            if path is not None and len(path) + 1 >= min_length:
                return [v] + path
    return None


# -- chordless graphs -------------------------------------------------------


def _two_disjoint_paths(g: Graph, s: int, t: int) -> tuple[list[int], list[int]] | None:
    """Two internally vertex-disjoint s-t paths in g minus the edge st, via unit max-flow."""
    # node 2x = x_in, 2x+1 = x_out; internal arcs x_in -> x_out carry capacity 1
    cap: dict[tuple[int, int], int] = {}
    out: dict[int, list[int]] = {i: [] for i in range(2 * g.n)}

    def arc(a, b):
        if (a, b) not in cap:
            cap[(a, b)] = 0
            cap[(b, a)] = cap.get((b, a), 0)
            out[a].append(b)
            out[b].append(a)
        cap[(a, b)] += 1

    for x in range(g.n):
        arc(2 * x, 2 * x + 1)
    for a, b in g.sorted_edges():
        if {a, b} == {s, t}:
            continue
        arc(2 * a + 1, 2 * b)
        arc(2 * b + 1, 2 * a)
    source, sink = 2 * s + 1, 2 * t
    flow = {k: 0 for k in cap}
    for _ in range(2):
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in out[a]:
                if b not in parent and cap[(a, b)] - flow[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            return None
        b = sink
        while parent[b] is not None:
            a = parent[b]
            flow[(a, b)] += 1
            flow[(b, a)] -= 1
            b = a
    paths = []
    for _ in range(2):
        node, path = source, [s]
        while node != sink:
            nxt = next(b for b in out[node] if flow[(node, b)] > 0 and b % 2 == 0 and b // 2 != node // 2)
            flow[(node, nxt)] -= 1
            path.append(nxt // 2)
            node = nxt + 1 if nxt != sink else sink
        paths.append(path)
    return paths[0], paths[1]


def find_chorded_cycle(g: Graph) -> tuple[list[int], tuple[int, int]] | None:
    """A cycle with a chord, as (cycle vertices, chord), or None when g is chordless.

    Edge uv is a chord of some cycle iff g - uv has two internally disjoint u-v paths.
    """
    for u, v in g.sorted_edges():
        paths = _two_disjoint_paths(g, u, v)
        if paths is not None:
            p, q = paths
            cycle = p + list(reversed(q[1:-1]))
            return cycle, (u, v)
    return None


def is_chordless(g: Graph) -> bool:
    return find_chorded_cycle(g) is None


# -- treewidth <= 2 ---------------------------------------------------------


def is_treewidth_at_most_2(g: Graph) -> EliminationOrder | None:
    """Eliminate vertices of current degree <= 2, joining the two neighbors of a
    degree-2 vertex. Succeeds iff the whole graph is eliminated."""
    nbrs = [set(a) for a in g.adj]
    alive = set(range(g.n))
    order, fill = [], []
    width = 0
    while alive:
        v = min((u for u in alive if len(nbrs[u]) <= 2), default=None)
        if v is None:
            return None
        ns = sorted(nbrs[v])
        width = max(width, len(ns))
        if len(ns) == 2:
            a, b = ns
            if b not in nbrs[a]:
                nbrs[a].add(b)
                nbrs[b].add(a)
                fill.append((a, b))
        for w in ns:
            nbrs[w].discard(v)
        alive.discard(v)
        order.append(v)
    return EliminationOrder(tuple(order), width, tuple(fill))


def filled_graph(g: Graph, elim: EliminationOrder) -> Graph:
    return Graph.from_edges(g.n, list(g.edges) + list(elim.fill))


# -- blocks -----------------------------------------------------------------


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Biconnected components (bridges included) via iterative Tarjan lowpoints."""
    disc = [-1] * g.n
    low = [0] * g.n
    blocks: list[frozenset[int]] = []
    timer = 0
    for root in range(g.n):
        if disc[root] != -1 or not g.adj[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(g.adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(g.adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                comp = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.update((a, b))
                    if (a, b) == (parent, v):
                        break
                blocks.append(frozenset(comp))
    blocks.sort(key=lambda b: sorted(b))
    count: dict[int, int] = {}
    for b in blocks:
        for v in b:
            count[v] = count.get(v, 0) + 1
    cuts = frozenset(v for v, c in count.items() if c >= 2)
    leaves = tuple(i for i, b in enumerate(blocks) if len(b & cuts) <= 1)
    return BlockDecomposition(tuple(blocks), cuts, leaves)


def is_two_connected(g: Graph) -> bool:
    if g.n < 3 or not g.is_connected():
        return False
    return len(block_decomposition(g).blocks) == 1


def find_uvw_min2connected(b: Graph, x: int) -> tuple[int, int, int]:
    """Vertices u, v, w with v, w degree-2 neighbors of u and x not in {v, w}.

    ``b`` must be minimally 2-connected (2-connected and chordless).
    """
    if not is_two_connected(b):
        raise StructureError("graph is not 2-connected")
    chord = find_chorded_cycle(b)
    if chord is not None:
        raise StructureError("graph is not chordless", chord)
    if not 0 <= x < b.n:
        raise ValueError(f"vertex {x} not in graph")

    def pick(u):
        cands = [w for w in b.adj[u] if b.degree(w) == 2 and w != x]
        return (u, cands[0], cands[1]) if len(cands) >= 2 else None

    if all(b.degree(v) == 2 for v in range(b.n)):
        return pick(x)
    deg2 = {v for v in range(b.n) if b.degree(v) == 2}
    rest, ids = b.remove(deg2)
    comps = rest.components()
    isolated = [ids[c[0]] for c in comps if len(c) == 1]
    if isolated:
        return pick(isolated[0])
    for comp in comps:
        for leaf in comp:
            if rest.degree(leaf) == 1:
                found = pick(ids[leaf])
                if found is not None:
                    return found
    raise AssertionError("no (u, v, w) found; input is not minimally 2-connected")


# -- chromatic number -------------------------------------------------------


def greedy_clique(g: Graph) -> list[int]:
    best: list[int] = []
    for start in sorted(range(g.n), key=lambda v: (-g.degree(v), v)):
        clique = [start]
        cand = g.masks[start]
        while cand:
            w = max(iter_bits(cand), key=lambda u: (bin(g.masks[u] & cand).count("1"), -u))
            clique.append(w)
            cand &= g.masks[w]
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def optimal_coloring(g: Graph) -> tuple[int, list[int]]:
    """Exact chromatic number and a witness coloring (colors 0..chi-1).

    DSATUR branch and bound seeded with a greedy clique lower bound.
    """
    if g.n == 0:
        return 0, []
    clique = greedy_clique(g)
    lower = len(clique)
    best = [_dsatur_greedy(g)]
    best_k = [max(best[0]) + 1]
    color = [-1] * g.n
    for i, v in enumerate(clique):
        color[v] = i

    def sat(v):
        return len({color[w] for w in g.adj[v] if color[w] >= 0})

    def search(used: int, left: int):
        if best_k[0] == lower:
            return
        if left == 0:
            best_k[0] = used
            best[0] = color[:]
            return
        v = max(
            (u for u in range(g.n) if color[u] < 0),
            key=lambda u: (sat(u), g.degree(u), -u),
        )
        taken = {color[w] for w in g.adj[v]}
        for c in range(used):
            if c not in taken:
                color[v] = c
                search(used, left - 1)
                color[v] = -1
                if best_k[0] == lower:
                    return
        if used + 1 < best_k[0]:
            color[v] = used
            search(used + 1, left - 1)
            color[v] = -1

    search(len(clique), g.n - len(clique))
    return best_k[0], best[0]


def _dsatur_greedy(g: Graph) -> list[int]:
    color = [-1] * g.n
    for _ in range(g.n):
        v = max(
            (u for u in range(g.n) if color[u] < 0),
            key=lambda u: (len({color[w] for w in g.adj[u] if color[w] >= 0}), g.degree(u), -u),
        )
        taken = {color[w] for w in g.adj[v]}
        color[v] = next(c for c in range(g.n) if c not in taken)
    return color


def chromatic_number(g: Graph) -> int:
    return optimal_coloring(g)[0]


def color_classes(coloring: list[int]) -> list[list[int]]:
    """Group a 0..k-1 coloring into classes ordered by color."""
    k = max(coloring, default=-1) + 1
    classes: list[list[int]] = [[] for _ in range(k)]
    for v, c in enumerate(coloring):
        classes[c].append(v)
    return classes
