"""Partial list colouring: exact lambda_t, the lower-bound formulas, and the
constructive algorithms for claw-free, large-chromatic, chordless, chordal,
width-2 and H-family graphs."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil
from typing import Hashable, Iterable, Mapping, Sequence

from .graph import Graph
from .listcolor import (
    CHOOSABLE,
    enumeration_order,
    format_assignment,
    is_choosable,
    is_list_colorable,
    max_colorable_subgraph,
    validate_coloring,
    _prefix_walk,
)
from .structure import (
    StructureError,
    block_decomposition,
    color_classes,
    degeneracy_order,
    find_chorded_cycle,
    find_claw,
    find_induced_cycle,
    find_uvw_min2connected,
    is_chordal,
    is_two_choosable,
    is_treewidth_at_most_2,
    optimal_coloring,
)


class InvariantError(AssertionError):
    """An internal guarantee of a constructive algorithm failed."""


@dataclass(frozen=True)
class Bounds:
    albertson: Fraction
    chappell: Fraction
    haas: Fraction
    conjecture: Fraction


def bounds_report(n: int, s: int, t: int, chi: int) -> Bounds:
    """Lower bounds on lambda_t as exact rationals, next to the conjectured t*n/s."""
    if not (1 <= t < s <= n):
        raise ValueError(f"need 1 <= t < s <= n, got t={t}, s={s}, n={n}")
    if chi < 2:
        raise ValueError("chromatic number must be at least 2")
    conj = Fraction(t * n, s)
    return Bounds(
        albertson=(1 - Fraction(chi - 1, chi) ** t) * n,
        chappell=Fraction(6, 7) * conj,
        haas=Fraction(n, -(-s // t)),
        conjecture=conj,
    )


@dataclass
class PartialColoring:
    coloring: dict[int, int]
    target: Fraction
    algorithm: str
    info: dict = field(default_factory=dict)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.coloring)

    @property
    def size(self) -> int:
        return len(self.coloring)

    @property
    def meets_target(self) -> bool:
        return self.size >= self.target


@dataclass
class PlccReport:
    n: int
    s: int
    t: int
    achieved: int
    target: Fraction
    bounds: Bounds | None
    algorithm: str
    elapsed_ms: float = 0.0
    witness: dict | None = None

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "s": self.s,
            "t": self.t,
            "achieved": self.achieved,
            "target_num": self.target.numerator,
            "target_den": self.target.denominator,
            "bounds": None,
            "witness": format_assignment(self.witness) if self.witness is not None else None,
            "algorithm": self.algorithm,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.bounds is not None:
            out["bounds"] = {
                f"{name}_{part}": getattr(getattr(self.bounds, name), attr)
                for name in ("albertson", "chappell", "haas")
                for part, attr in (("num", "numerator"), ("den", "denominator"))
            }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _uniform_size(g: Graph, lists) -> int:
    sizes = {len(lists[v]) for v in range(g.n)}
    if len(sizes) > 1:
        raise ValueError("lists must all have the same size")
    return sizes.pop() if sizes else 0


# -- exact lambda_t ---------------------------------------------------------


@dataclass
class LambdaResult:
    status: str  # "exact" | "inconclusive"
    value: int | None  # exact value, or best upper bound found when inconclusive
    witness: dict | None
    nodes: int = 0

    @property
    def upper(self) -> int | None:
        return self.value


def _induced_lambda(g: Graph, lists, verts) -> int:
    sub, ids = g.induced(verts)
    return len(max_colorable_subgraph(sub, {i: lists[v] for i, v in enumerate(ids)})[0])


def lambda_t_exact(g: Graph, t: int, budget: int | None = None) -> LambdaResult:
    """min over t-assignments of the largest list-colorable induced subgraph.

    Walks canonical t-assignments; a prefix whose own induced subgraph already
    colors at least the running minimum cannot lower it and is skipped.
    """
    if t < 1:
        raise ValueError("t must be positive")
    if g.n == 0:
        return LambdaResult("exact", 0, {}, 0)
    order = enumeration_order(g)
    best: list = [g.n + 1, None]
    state = {"nodes": 0, "stopped": False}
    last = len(order) - 1

    def visit(depth, lists):
        if budget is not None and state["nodes"] >= budget:
            state["stopped"] = True
            return "stop"
        state["nodes"] += 1
        if depth == last:
            value = len(max_colorable_subgraph(g, lists)[0])
            if value < best[0]:
                best[0], best[1] = value, dict(lists)
            return "skip"
        if best[1] is not None and _induced_lambda(g, lists, order[: depth + 1]) >= best[0]:
            return "skip"
        return "descend"

    _prefix_walk(order, [t] * g.n, visit)
    value = best[0] if best[1] is not None else None
    return LambdaResult("inconclusive" if state["stopped"] else "exact", value, best[1], state["nodes"])


def max_two_choosable_induced(g: Graph) -> tuple[frozenset[int], int]:
    """Largest vertex set inducing a 2-choosable subgraph, by scanning every
    subset with the core test. Returns the lexicographically first maximizer
    (as a bitmask order) and the number of 2-choosable subsets seen."""
    best, best_mask, count = -1, 0, 0
    for mask in range(1 << g.n):
        verts = [v for v in range(g.n) if mask >> v & 1]
        if not is_two_choosable(g.induced(verts)[0]):
            continue
        count += 1
        if len(verts) > best:
            best, best_mask = len(verts), mask
    return frozenset(v for v in range(g.n) if best_mask >> v & 1), count


# -- Hall violators ---------------------------------------------------------


def _max_matching(left, adj) -> dict:
    mate_r: dict = {}

    def augment(x, seen):
        for y in adj[x]:
            if y in seen:
                continue
            seen.add(y)
            if y not in mate_r or augment(mate_r[y], seen):
                mate_r[y] = x
                return True
        return False

    for x in left:
        augment(x, set())
    return mate_r


def _alternating_reach(sources, adj, mate_r):
    """Left and right vertices reachable from ``sources`` along alternating paths,
    with BFS parents (left -> previous left) for path recovery."""
    parent = {x: None for x in sources}
    rights: dict = {}
    queue = deque(sources)
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y in rights:
                continue
            rights[y] = x
            z = mate_r.get(y)
            if z is not None and z not in parent:
                parent[z] = x
                queue.append(z)
    return parent, rights


def hall_violator(
    left: Sequence[Hashable],
    right: Sequence[Hashable],
    adj: Mapping[Hashable, Iterable[Hashable]],
) -> frozenset | None:
    """A critical Hall violator in polynomial time, or None when Hall holds.

    Takes the alternating closure X of the first exposed left vertex under a
    maximum matching: |N(X)| = |X| - 1 and every vertex of N(X) has at least two
    neighbors in X (its mate and the vertex it was reached from).
    """
    left = list(left)
    rset = set(right)
    nbrs = {x: [y for y in adj.get(x, ()) if y in rset] for x in left}
    mate_r = _max_matching(left, nbrs)
    matched_l = set(mate_r.values())
    exposed = [x for x in left if x not in matched_l]
    if not exposed:
        return None
    parent, _ = _alternating_reach(exposed[:1], nbrs, mate_r)
    return frozenset(parent)


def find_deficiency_set(
    left: Sequence[Hashable],
    right: Sequence[Hashable],
    adj: Mapping[Hashable, Iterable[Hashable]],
) -> frozenset | None:
    """A set X of left vertices with |N(X)| < |X| minimizing |N(X)|, then minimal
    by inclusion, then lexicographically smallest in ``left`` order; None when
    Hall's condition holds.

    Existence is decided by maximum matching. The smallest neighborhood is then
    found by searching right sets Y in increasing size; the search is bounded by
    the critical violator's neighborhood, but is exponential in the worst case
    (the smallest Hall violator problem is NP-hard).
    For an optimal Y every deficient X inside L(Y) = {x : N(x) <= Y} has N(X) = Y,
    so the inclusion-minimal ones are exactly the (|Y|+1)-subsets of L(Y).
    """
    left = list(left)
    rset = set(right)
    nbrs = {x: frozenset(y for y in adj.get(x, ()) if y in rset) for x in left}
    crit = hall_violator(left, right, nbrs)
    if crit is None:
        return None
    upper = len(frozenset().union(*(nbrs[x] for x in crit)))
    for k in range(upper + 1):
        pool = sorted(
            frozenset().union(*(nbrs[x] for x in left if len(nbrs[x]) <= k)),
            key=repr,
        )
        found = []
        for ys in combinations(pool, k):
            y = frozenset(ys)
            inside = [x for x in left if nbrs[x] <= y]
            if len(inside) > k:
                found.append(inside[: k + 1])
        if found:
            pos = {x: i for i, x in enumerate(left)}
            return frozenset(min(found, key=lambda xs: [pos[x] for x in xs]))
    raise AssertionError("critical violator bound not reached")


# -- claw-free graphs -------------------------------------------------------


def extend_lists(lists: Mapping[int, frozenset], s: int, t: int):
    """Append s - t fresh colors (shared by every vertex) to each list."""
    top = max((c for cs in lists.values() for c in cs), default=-1)
    sigmas = tuple(range(top + 1, top + 1 + s - t))
    return {v: frozenset(cs) | frozenset(sigmas) for v, cs in lists.items()}, sigmas


def _check_swap_state(g: Graph, ext, coloring) -> None:
    classes: dict[int, set] = {}
    for v, c in coloring.items():
        if c not in ext[v]:
            raise InvariantError(f"vertex {v} colored {c} outside its list")
        classes.setdefault(c, set()).add(v)
    if len(coloring) != g.n:
        raise InvariantError("extended coloring is not total")
    for c, cls in classes.items():
        if not g.is_independent(cls):
            raise InvariantError(f"color class {c} is not independent")


def partial_color_clawfree(
    g: Graph,
    lists: Mapping[int, frozenset],
    s: int | None = None,
    initial: Mapping[int, int] | None = None,
) -> PartialColoring:
    """List-color at least t*n/s vertices of a claw-free graph from t-lists.

    Colors the graph from the lists padded with s - t fresh colors, then trades
    fresh-colored vertices for list colors through Hall violators until the
    list-colored part is large enough.
    """
    claw = find_claw(g)
    if claw is not None:
        raise StructureError("graph contains a claw", claw)
    t = _uniform_size(g, lists)
    if s is None:
        s = degeneracy_order(g).width + 1
    if not 0 < t < s:
        raise ValueError(f"need 0 < t < s, got t={t}, s={s}")
    ext, sigmas = extend_lists(lists, s, t)
    coloring = dict(initial) if initial is not None else is_list_colorable(g, ext)
    if coloring is None:
        raise ValueError(f"no coloring from the padded lists; s={s} is too small")
    _check_swap_state(g, ext, coloring)
    sigma_set = set(sigmas)
    originals = sorted({c for cs in lists.values() for c in cs})
    n = g.n
    swaps = []
    while True:
        kept = sum(1 for c in coloring.values() if c not in sigma_set)
        if kept * s >= t * n:
            break
        classes: dict[int, list] = {c: [] for c in list(originals) + list(sigmas)}
        for v in sorted(coloring):
            classes[coloring[v]].append(v)
        sigma = next((c for c in sigmas if len(classes[c]) * s > n), None)
        if sigma is None:
            raise InvariantError("no oversized fresh class although the target is missed")
        cs = classes[sigma]
        j = next(
            (c for c in originals if len(classes[c]) < sum(1 for v in cs if c in lists[v])),
            None,
        )
        if j is None:
            raise InvariantError("no deficient list color found")
        left = [v for v in cs if j in lists[v]]
        right = classes[j]
        rset = set(right)
        adj = {v: [w for w in g.adj[v] if w in rset] for v in left}
        X = hall_violator(left, right, adj)
        if X is None:
            raise InvariantError("Hall violator expected but not found")
        NX = sorted({w for v in X for w in adj[v]})
        rest = set(cs) - X
        for y in NX:
            if sum(1 for w in g.adj[y] if w in X) < 2:
                raise InvariantError(f"vertex {y} has fewer than two neighbors in X")
            if any(w in rest for w in g.adj[y]):
                raise InvariantError(f"vertex {y} sees a fresh-colored vertex outside X")
        for v in X:
            coloring[v] = j
        for y in NX:
            coloring[y] = sigma
        _check_swap_state(g, ext, coloring)
        after = sum(1 for c in coloring.values() if c not in sigma_set)
        if after <= kept:
            raise InvariantError("swap did not reduce fresh-colored vertices")
        swaps.append((sigma, j, tuple(sorted(X)), tuple(NX)))
    out = {v: c for v, c in coloring.items() if c not in sigma_set}
    return PartialColoring(out, Fraction(t * n, s), "clawfree", {"s": s, "t": t, "swaps": swaps})


# -- large chromatic number -------------------------------------------------


@dataclass
class ShrinkStep:
    k: int
    vertices: tuple[int, ...]
    chi: int
    list_status: str | None = None  # choosability verdict for k-lists, if checked
    case: str = "start"


def shrink_large_chi(
    g: Graph,
    t: int,
    check_lists_upto: int = 6,
    list_budget: int | None = 2_000_000,
) -> list[ShrinkStep]:
    """Nested induced subgraphs G_s > G_{s-1} > ... > G_t with chi(G_k) = k and
    |G_k| >= k*n/s, for graphs with chi >= (n-1)/2.

    Each step deletes one singleton color class when 2k > |G_k|, else a class of
    size two, else a singleton class together with one vertex u of a large class
    (or two vertices of that class when removing u alone drops chi).
    """
    s, _ = optimal_coloring(g)
    if 2 * s < g.n - 1:
        raise StructureError(f"chromatic number {s} is below (n-1)/2 for n={g.n}")
    if not 1 <= t < s:
        raise ValueError(f"need 1 <= t < chi = {s}")
    cur = list(range(g.n))
    steps = [_shrink_record(g, cur, s, "start", check_lists_upto, list_budget)]
    k = s
    while k > t:
        sub, ids = g.induced(cur)
        _, col = optimal_coloring(sub)
        classes = sorted(([ids[v] for v in c] for c in color_classes(col)), key=min)
        m = len(cur)
        if 2 * k > m:
            drop, case = next(c for c in classes if len(c) == 1), "singleton"
        elif any(len(c) == 2 for c in classes):
            drop, case = next(c for c in classes if len(c) == 2), "pair"
        else:
            cb = next(c for c in classes if len(c) == 1)
            cc = next(c for c in classes if len(c) > 2)
            u = cc[0]
            without_u, _ = g.induced(v for v in cur if v != u)
            if optimal_coloring(without_u)[0] == k:
                drop, case = cb + [u], "singleton+u"
            else:
                drop, case = [u, cc[1]], "u+v"
        cur = [v for v in cur if v not in set(drop)]
        k -= 1
        rec = _shrink_record(g, cur, k, case, check_lists_upto, list_budget)
        if rec.chi != k:
            raise InvariantError(f"step {case} produced chi {rec.chi}, expected {k}")
        steps.append(rec)
    return steps


def _shrink_record(g, cur, k, case, check_lists_upto, list_budget) -> ShrinkStep:
    sub, _ = g.induced(cur)
    chi = optimal_coloring(sub)[0]
    status = None
    if sub.n <= check_lists_upto:
        status = is_choosable(sub, [k] * sub.n, budget=list_budget).status
    return ShrinkStep(k, tuple(cur), chi, status, case)


# -- chordless graphs -------------------------------------------------------


def independent_set_third(g: Graph) -> frozenset[int]:
    """Independent set of size >= n/3 in a 2-degenerate graph."""
    if degeneracy_order(g).width > 2:
        raise StructureError("graph is not 2-degenerate")
    nbrs = [set(a) for a in g.adj]
    alive = set(range(g.n))
    out = set()
    while alive:
        v = min(alive, key=lambda u: (len(nbrs[u]), u))
        out.add(v)
        gone = {v} | nbrs[v]
        for x in gone:
            for w in nbrs[x]:
                nbrs[w].discard(x)
        alive -= gone
    return frozenset(out)


def _pick_color(lists, v, coloring, g: Graph) -> int:
    taken = {coloring[w] for w in g.adj[v] if w in coloring}
    free = sorted(c for c in lists[v] if c not in taken)
    if not free:
        raise InvariantError(f"vertex {v} has no free color")
    return free[0]


def partial_color_chordless(g: Graph, lists: Mapping[int, frozenset]) -> PartialColoring:
    """List-color at least 2n/3 vertices of a chordless graph from 2-lists.

    Peels a vertex of degree <= 1, or a triple (u, v, w) from a leaf block where
    v, w are degree-2 neighbors of u; after the rest is colored, u stays blank and
    v, w each see at most one colored neighbor.
    """
    bad = find_chorded_cycle(g)
    if bad is not None:
        raise StructureError("graph has a chorded cycle", bad)
    if any(len(lists[v]) < 2 for v in range(g.n)):
        raise ValueError("lists must have at least two colors")
    alive = set(range(g.n))
    plan = []  # peeled groups, colored in reverse
    steps = []
    while alive:
        sub, ids = g.induced(alive)
        low = next((v for v in range(sub.n) if sub.degree(v) <= 1), None)
        if low is not None:
            plan.append((ids[low],))
            alive.discard(ids[low])
            continue
        dec = block_decomposition(sub)
        bi = dec.leaf_blocks[0]
        block = sorted(dec.blocks[bi])
        cuts = sorted(dec.blocks[bi] & dec.cut_vertices)
        x = cuts[0] if cuts else block[0]
        bg, bids = sub.induced(block)
        u, v, w = find_uvw_min2connected(bg, bids.index(x))
        u, v, w = (ids[bids[a]] for a in (u, v, w))
        xo = ids[x]
        for a in (v, w):
            if sum(1 for b in g.adj[a] if b in alive) != 2 or not g.has_edge(u, a) or a == xo:
                raise InvariantError(f"peeled triple ({u}, {v}, {w}) violates its postcondition")
        steps.append((u, v, w, xo))
        plan.append((None, v, w, u))
        alive -= {u, v, w}
    coloring: dict[int, int] = {}
    for group in reversed(plan):
        if group[0] is None:
            _, v, w, _u = group
            coloring[v] = _pick_color(lists, v, coloring, g)
            coloring[w] = _pick_color(lists, w, coloring, g)
        else:
            (v,) = group
            coloring[v] = _pick_color(lists, v, coloring, g)
    return PartialColoring(coloring, Fraction(2 * g.n, 3), "chordless", {"steps": steps})


# -- chordal and width-2 graphs ---------------------------------------------


def _greedy_classes(g: Graph, peo) -> list[list[int]]:
    """Color along the reverse of a perfect elimination order (optimal on chordal graphs)."""
    color: dict[int, int] = {}
    for v in reversed(peo):
        taken = {color[w] for w in g.adj[v] if w in color}
        color[v] = next(c for c in range(g.n + 1) if c not in taken)
    k = max(color.values(), default=-1) + 1
    classes: list[list[int]] = [[] for _ in range(k)]
    for v in sorted(color):
        classes[color[v]].append(v)
    return classes


def _keep_largest(classes, t):
    ranked = sorted(range(len(classes)), key=lambda i: (-len(classes[i]), i))
    return sorted(v for i in ranked[:t] for v in classes[i])


def _list_color_along(g: Graph, lists, peo, keep) -> dict[int, int]:
    """Greedy list coloring of ``keep`` in reverse elimination order."""
    keep = set(keep)
    coloring: dict[int, int] = {}
    for v in reversed(peo):
        if v in keep:
            coloring[v] = _pick_color(lists, v, coloring, g)
    return coloring


def partial_color_chordal(g: Graph, lists: Mapping[int, frozenset]) -> PartialColoring:
    """Keep the t largest classes of an optimal coloring, then list-color greedily."""
    peo = is_chordal(g)
    if peo is None:
        raise StructureError("graph is not chordal", find_induced_cycle(g))
    t = _uniform_size(g, lists)
    if t < 1:
        raise ValueError("lists must be nonempty")
    classes = _greedy_classes(g, peo.order)
    omega = len(classes)
    keep = _keep_largest(classes, t)
    coloring = _list_color_along(g, lists, peo.order, keep)
    target = Fraction(t * g.n, omega) if omega > t else Fraction(g.n)
    return PartialColoring(coloring, target, "chordal", {"omega": omega, "t": t})


def partial_color_tw2(g: Graph, lists: Mapping[int, frozenset]) -> PartialColoring:
    """Color the chordal completion with 3 colors, drop the smallest class, and
    list-color the surviving forest."""
    elim = is_treewidth_at_most_2(g)
    if elim is None:
        raise StructureError("treewidth exceeds 2")
    if any(len(lists[v]) < 2 for v in range(g.n)):
        raise ValueError("lists must have at least two colors")
    filled = Graph.from_edges(g.n, list(g.edges) + list(elim.fill))
    classes = _greedy_classes(filled, elim.order)
    if len(classes) > 3:
        raise InvariantError("completion needs more than three colors")
    keep = _keep_largest(classes, 2)
    coloring = _list_color_along(filled, lists, elim.order, keep)
    coloring = {v: coloring[v] for v in sorted(coloring)}
    return PartialColoring(coloring, Fraction(2 * g.n, 3), "tw2", {"fill": elim.fill})


# -- the H family -----------------------------------------------------------


def partial_color_h_family(h: Graph, lists: Mapping[int, frozenset]) -> PartialColoring:
    """List-color 6 vertices of each odd-numbered gadget and 5 of each even one."""
    from .constructions import h_family

    if h.n == 0 or h.n % 8 or h != h_family(h.n // 8):
        raise StructureError("graph is not an H-family graph")
    if any(len(lists[v]) != 2 for v in range(h.n)):
        raise ValueError("lists must have exactly two colors")
    r = h.n // 8
    coloring: dict[int, int] = {}
    cases = []
    for i in range(r):
        v = [None] + [8 * i + j for j in range(8)]  # v[1]..v[8]
        if i % 2 == 1:
            part = is_list_colorable(h, lists, [v[j] for j in range(3, 8)])
            if part is None:
                raise InvariantError(f"gadget {i + 1}: v3..v7 not colorable")
            coloring.update(part)
            cases.append("five")
            continue
        if not (lists[v[1]] == lists[v[3]] == lists[v[4]]):
            tri = is_list_colorable(h, lists, [v[1], v[3], v[4]])
            if tri is None:
                raise InvariantError(f"gadget {i + 1}: triangle not colorable")
            coloring.update(tri)
            for j in (7, 8, 5):
                coloring[v[j]] = _pick_color(lists, v[j], coloring, h)
            cases.append("triangle")
        else:
            sq = is_list_colorable(h, lists, [v[2], v[5], v[8], v[7]])
            if sq is None:
                raise InvariantError(f"gadget {i + 1}: 4-cycle not colorable")
            coloring.update(sq)
            c2, c7 = sq[v[2]], sq[v[7]]
            if c2 not in lists[v[1]]:
                coloring[v[4]] = _pick_color(lists, v[4], coloring, h)
                coloring[v[1]] = _pick_color(lists, v[1], coloring, h)
            elif c7 not in lists[v[4]]:
                coloring[v[1]] = _pick_color(lists, v[1], coloring, h)
                coloring[v[4]] = _pick_color(lists, v[4], coloring, h)
            else:
                coloring[v[1]], coloring[v[4]] = c7, c2
            cases.append("g8")
    if not validate_coloring(h, lists, coloring):
        raise InvariantError("gadget colorings conflict")
    target = Fraction(2 * h.n, 3)
    return PartialColoring(
        dict(sorted(coloring.items())), target, "hfamily",
        {"cases": cases, "promised": 6 * ceil(r / 2) + 5 * (r // 2)},
    )
