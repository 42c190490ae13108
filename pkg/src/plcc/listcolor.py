"""List colouring: exact solvers, canonical list-assignment enumeration, and
choosability deciders (exhaustive with a node budget, or sampled)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .graph import Graph, iter_bits
from .structure import chromatic_number, degeneracy_order, is_two_choosable

Lists = Mapping[int, frozenset]
Coloring = dict

CHOOSABLE = "choosable"
NOT_CHOOSABLE = "not_choosable"
INCONCLUSIVE = "inconclusive"


class AssignmentFormatError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass
class ChoosabilityVerdict:
    status: str
    witness: dict | None = None
    examined: int = 0  # complete canonical assignments checked
    nodes: int = 0  # prefix nodes visited, the unit of the budget
    pruned: int = 0  # subtrees closed by an extension certificate

    @property
    def choosable(self) -> bool:
        return self.status == CHOOSABLE


@dataclass
class SampleResult:
    tried: int = 0
    failures: list = field(default_factory=list)
    per_palette: dict = field(default_factory=dict)


@dataclass
class ListChromatic:
    value: int | None
    low: int
    high: int
    method: str  # "exact" | "core-characterization" | "bounded"


def as_lists(lists: Mapping[int, Iterable[int]]) -> dict[int, frozenset]:
    return {v: frozenset(c) for v, c in lists.items()}


def uniform_lists(n: int, colors: Iterable[int]) -> dict[int, frozenset]:
    colors = frozenset(colors)
    return {v: colors for v in range(n)}


def random_assignment(n: int, size: int | Sequence[int], palette: int, rng: random.Random):
    sizes = [size] * n if isinstance(size, int) else list(size)
    return {v: frozenset(rng.sample(range(palette), sizes[v])) for v in range(n)}


def _check_cover(g: Graph, lists: Lists) -> None:
    missing = [v for v in range(g.n) if v not in lists]
    if missing:
        raise ValueError(f"no list for vertices {[v + 1 for v in missing]}")


def validate_coloring(g: Graph, lists: Lists, coloring: Mapping[int, int]) -> bool:
    """Independent check: every assigned color is in its list and no edge is monochromatic."""
    for v, c in coloring.items():
        if not 0 <= v < g.n or c not in lists[v]:
            return False
    return all(
        not (u in coloring and v in coloring and coloring[u] == coloring[v])
        for u, v in g.edges
    )


# -- exact solvers ----------------------------------------------------------


def _encode(g: Graph, lists: Lists, vertices, color_key=None):
    palette = sorted({c for v in vertices for c in lists[v]}, key=color_key)
    bit = {c: i for i, c in enumerate(palette)}
    dom = [0] * g.n
    for v in vertices:
        for c in lists[v]:
            dom[v] |= 1 << bit[c]
    return palette, dom


def _color_search(masks, dom: list[int], todo: int) -> dict[int, int] | None:
    """Backtracking with forward checking; picks the uncolored vertex with the
    smallest remaining domain. Returns vertex -> bit index."""
    if not todo:
        return {}
    v = min(iter_bits(todo), key=lambda u: (bin(dom[u]).count("1"), -bin(masks[u] & todo).count("1"), u))
    rest = todo & ~(1 << v)
    nb = list(iter_bits(masks[v] & rest))
    d = dom[v]
    while d:
        low = d & -d
        d ^= low
        saved = [dom[w] for w in nb]
        ok = True
        for w in nb:
            dom[w] &= ~low
            if not dom[w]:
                ok = False
        if ok:
            sub = _color_search(masks, dom, rest)
            if sub is not None:
                sub[v] = low.bit_length() - 1
                return sub
        for w, s in zip(nb, saved):
            dom[w] = s
    return None


def is_list_colorable(
    g: Graph,
    lists: Lists,
    vertices: Iterable[int] | None = None,
    color_key: Callable | None = None,
) -> dict[int, int] | None:
    """A proper coloring of ``g`` (or of the subgraph induced on ``vertices``)
    drawn from the lists, or None. ``color_key`` orders color preference."""
    verts = list(range(g.n)) if vertices is None else list(vertices)
    for v in verts:
        if v not in lists:
            raise ValueError(f"no list for vertex {v + 1}")
    palette, dom = _encode(g, lists, verts, color_key)
    todo = sum(1 << v for v in verts)
    if any(not dom[v] for v in verts):
        return None
    found = _color_search(g.masks, dom, todo)
    if found is None:
        return None
    return {v: palette[b] for v, b in sorted(found.items())}


def max_colorable_subgraph(g: Graph, lists: Lists) -> tuple[frozenset, dict[int, int]]:
    """Largest vertex set whose induced subgraph is list colorable, with a coloring.

    Branch and bound: each vertex takes a list color or is skipped; a branch is
    cut when colored-so-far plus live remaining vertices cannot beat the incumbent.
    """
    _check_cover(g, lists)
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    palette, dom0 = _encode(g, lists, order)
    # greedy incumbent
    best_color: dict[int, int] = {}
    for v in order:
        used = {best_color[w] for w in g.adj[v] if w in best_color}
        free = dom0[v] & ~sum(1 << b for b in used)
        if free:
            best_color[v] = (free & -free).bit_length() - 1
    best = [len(best_color), dict(best_color)]
    n = g.n
    current: dict[int, int] = {}

    def search(i: int, dom: list[int]):
        if i == n:
            if len(current) > best[0]:
                best[0], best[1] = len(current), dict(current)
            return
        live = sum(1 for j in range(i, n) if dom[order[j]])
        if len(current) + live <= best[0]:
            return
        v = order[i]
        d = dom[v]
        later = [w for w in g.adj[v] if w not in current]
        while d:
            low = d & -d
            d ^= low
            nd = dom[:]
            for w in later:
                nd[w] &= ~low
            current[v] = low.bit_length() - 1
            search(i + 1, nd)
            del current[v]
        search(i + 1, dom)

    search(0, dom0)
    coloring = {v: palette[b] for v, b in sorted(best[1].items())}
    return frozenset(coloring), coloring


# -- canonical enumeration --------------------------------------------------


def enumeration_order(g: Graph) -> list[int]:
    return sorted(range(g.n), key=lambda v: (-g.degree(v), v))


def _splits(cells: list[tuple[int, ...]], size: int, i: int = 0):
    """Ways to pick ``size`` colors: a count per cell (largest counts first), rest fresh."""
    if i == len(cells):
        yield ()
        return
    for k in range(min(size, len(cells[i])), -1, -1):
        for tail in _splits(cells, size - k, i + 1):
            yield (k,) + tail


def _extend(cells, next_color, counts, size):
    """Apply a split: returns (chosen list, refined cells, next fresh color)."""
    chosen = []
    refined = []
    for cell, k in zip(cells, counts):
        chosen.extend(cell[:k])
        if k:
            refined.append(cell[:k])
        if k < len(cell):
            refined.append(cell[k:])
    fresh = size - sum(counts)
    new = tuple(range(next_color, next_color + fresh))
    chosen.extend(new)
    if new:
        refined.append(new)
    return frozenset(chosen), refined, next_color + fresh


def _prefix_walk(order, sizes, visit, equal: Mapping[int, int] | None = None):
    """Depth-first walk of the canonical assignment tree.

    Colors sharing a membership pattern over the lists fixed so far are
    interchangeable, so a new list is determined up to renaming by how many
    colors it takes from each such cell plus how many fresh colors it opens.
    ``visit(depth, lists)`` is called after each list is fixed and returns
    "descend", "skip" or "stop". ``equal`` maps a vertex to an earlier vertex
    whose list it must copy.
    """
    lists: dict[int, frozenset] = {}
    equal = equal or {}

    def rec(depth, cells, next_color):
        if depth == len(order):
            return True
        v = order[depth]
        if v in equal:
            src = lists[equal[v]]
            options = [(src, cells, next_color)]
        else:
            options = (_extend(cells, next_color, c, sizes[v]) for c in _splits(cells, sizes[v]))
        for chosen, refined, nxt in options:
            if v in equal:
                refined = cells
            lists[v] = chosen
            action = visit(depth, lists)
            if action == "stop":
                return False
            if action == "descend" and not rec(depth + 1, refined, nxt):
                return False
            del lists[v]
        return True

    rec(0, [], 0)


def canonical_assignments(
    g: Graph,
    sizes: Sequence[int],
    order: Sequence[int] | None = None,
    equal: Mapping[int, int] | None = None,
) -> Iterator[dict[int, frozenset]]:
    """One list assignment per color-renaming class with the given per-vertex sizes."""
    if len(sizes) != g.n:
        raise ValueError("size profile length must equal the vertex count")
    order = list(order) if order is not None else enumeration_order(g)

    def gen(depth, cells, next_color, lists):
        if depth == len(order):
            yield dict(lists)
            return
        v = order[depth]
        if equal and v in equal:
            lists[v] = lists[equal[v]]
            yield from gen(depth + 1, cells, next_color, lists)
            del lists[v]
            return
        for counts in _splits(cells, sizes[v]):
            chosen, refined, nxt = _extend(cells, next_color, counts, sizes[v])
            lists[v] = chosen
            yield from gen(depth + 1, refined, nxt, lists)
            del lists[v]

    yield from gen(0, [], 0, {})


def _degree_reduce(g: Graph, sizes: Sequence[int], protected=frozenset()) -> list[int]:
    """Vertices left after repeatedly dropping any vertex whose list size exceeds its
    degree among the survivors (such a vertex can always be colored last)."""
    alive = set(range(g.n))
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if v in protected:
                continue
            if sizes[v] > sum(1 for w in g.adj[v] if w in alive):
                alive.discard(v)
                changed = True
    return sorted(alive)


def _greedy_completes(g: Graph, rest: set[int], avail: Mapping[int, int]) -> bool:
    alive = set(rest)
    changed = True
    while alive and changed:
        changed = False
        for v in sorted(alive):
            if avail[v] > sum(1 for w in g.adj[v] if w in alive):
                alive.discard(v)
                changed = True
    return not alive


def _forced_colors(g: Graph, lists, prefix, u: int, need: int) -> set:
    """Colors that every proper coloring of ``prefix`` places on neighbors of ``u``.

    Stops early once fewer than ``need`` remain.
    """
    nbrs = [w for w in g.adj[u] if w in lists]
    if not nbrs:
        return set()
    order = sorted(prefix, key=lambda v: (len(lists[v]), v))
    color: dict[int, int] = {}
    forced: list = [None]

    def rec(i):
        if i == len(order):
            seen = {color[w] for w in nbrs}
            forced[0] = seen if forced[0] is None else forced[0] & seen
            return len(forced[0]) < need
        v = order[i]
        taken = {color[w] for w in g.adj[v] if w in color}
        for c in sorted(lists[v]):
            if c not in taken:
                color[v] = c
                if rec(i + 1):
                    return True
                del color[v]
        return False

    rec(0)
    return forced[0] or set()


class _Decider:
    """Exhaustive choosability search sharing one node budget across the
    top-level walk and the sub-problems its extension certificates raise."""

    def __init__(self, budget: int | None, certificates: bool, limit: int = 64):
        self.budget = budget
        self.certificates = certificates
        self.limit = limit
        self.nodes = 0
        self.cache: dict = {}

    def out_of_budget(self) -> bool:
        return self.budget is not None and self.nodes >= self.budget

    def sub_choosable(self, g: Graph, rest, sizes: Mapping[int, int]) -> bool:
        """True only when g[rest] is proven choosable for the given sizes."""
        if any(sizes[v] <= 0 for v in rest):
            return False
        if _greedy_completes(g, set(rest), sizes):
            return True
        sub, ids = g.induced(rest)
        key = (sub, tuple(sizes[v] for v in ids))
        if key not in self.cache:
            verdict = self.decide(sub, list(key[1]), None, {})
            if verdict.status == INCONCLUSIVE:
                return False
            self.cache[key] = verdict.status == CHOOSABLE
        return self.cache[key]

    def certificate(self, g: Graph, lists, prefix: set[int], rest: set[int], sizes) -> bool:
        """True if some coloring of the prefix leaves every completion colorable.

        A colored neighbor removes at most one entry from a list per distinct
        color, so it is enough that the remainder is choosable for the reduced
        sizes that coloring leaves.
        """
        if not rest:
            return True
        optimistic = {
            v: sizes[v] - (1 if any(w in prefix for w in g.adj[v]) else 0) for v in rest
        }
        if not self.sub_choosable(g, rest, optimistic):
            return False
        freq: dict[int, int] = {}
        for v in prefix:
            for c in lists[v]:
                freq[c] = freq.get(c, 0) + 1
        order = sorted(prefix, key=lambda v: (len(lists[v]), v))
        color: dict[int, int] = {}
        seen: set = set()
        tried = [0]

        def rec(i):
            if i == len(order):
                tried[0] += 1
                prof = {
                    v: sizes[v] - len({color[w] for w in g.adj[v] if w in color}) for v in rest
                }
                key = tuple(prof[v] for v in sorted(rest))
                if key in seen:
                    return False
                seen.add(key)
                return self.sub_choosable(g, rest, prof)
            v = order[i]
            taken = {color[w] for w in g.adj[v] if w in color}
            for c in sorted(lists[v], key=lambda c: (-freq[c], c)):
                if c in taken:
                    continue
                color[v] = c
                if rec(i + 1):
                    return True
                del color[v]
                if tried[0] >= self.limit or self.out_of_budget():
                    return False
            return False

        return rec(0)

    def decide(self, g: Graph, sizes, order, equal) -> ChoosabilityVerdict:
        protected = frozenset(equal) | frozenset(equal.values())
        core = set(_degree_reduce(g, sizes, protected))
        base = enumeration_order(g) if order is None else list(order)
        order = [v for v in base if v in core]
        verdict = ChoosabilityVerdict(CHOOSABLE)
        if not order:
            return verdict
        witness: list = []
        last = len(order) - 1

        def visit(depth, lists):
            if self.out_of_budget():
                verdict.status = INCONCLUSIVE
                return "stop"
            self.nodes += 1
            verdict.nodes += 1
            prefix = order[: depth + 1]
            v = order[depth]
            if depth == last:
                verdict.examined += 1
            if depth == last or any(w in lists for w in g.adj[v]):
                if is_list_colorable(g, lists, prefix) is None:
                    witness.append(dict(lists))
                    verdict.status = NOT_CHOOSABLE
                    return "stop"
            if depth == last:
                return "skip"
            if depth == last - 1 and order[last] not in equal:
                # the last list need not be enumerated: it is bad iff it fits
                # inside the colors every prefix coloring puts around it
                u = order[last]
                forced = _forced_colors(g, lists, prefix, u, sizes[u])
                verdict.examined += 1
                if len(forced) >= sizes[u]:
                    bad = dict(lists)
                    bad[u] = frozenset(sorted(forced)[: sizes[u]])
                    witness.append(bad)
                    verdict.status = NOT_CHOOSABLE
                    return "stop"
                return "skip"
            if self.certificates:
                if self.certificate(g, lists, set(prefix), core - set(prefix), sizes):
                    verdict.pruned += 1
                    return "skip"
                if self.out_of_budget():
                    verdict.status = INCONCLUSIVE
                    return "stop"
            return "descend"

        _prefix_walk(order, sizes, visit, equal)
        if verdict.status == NOT_CHOOSABLE:
            verdict.witness = complete_witness(g, sizes, witness[0])
        return verdict


def is_choosable(
    g: Graph,
    sizes: Sequence[int],
    budget: int | None = None,
    order: Sequence[int] | None = None,
    equal: Mapping[int, int] | None = None,
    certificates: bool = True,
) -> ChoosabilityVerdict:
    """Decide whether every assignment with the given list sizes is colorable.

    Walks the canonical assignment tree. A prefix whose induced subgraph is
    already uncolorable yields a counterexample; a prefix with an extension
    certificate closes its subtree. ``budget`` caps visited prefix nodes,
    sub-problems included; running out gives an inconclusive verdict, never a
    positive one. ``equal`` maps a vertex to an earlier vertex whose list it copies.
    """
    if len(sizes) != g.n:
        raise ValueError("size profile length must equal the vertex count")
    if any(s < 1 for s in sizes):
        raise ValueError("list sizes must be positive")
    equal = dict(equal or {})
    if order is not None:
        pos = {v: i for i, v in enumerate(order)}
        if sorted(pos) != list(range(g.n)):
            raise ValueError("order must be a permutation of the vertices")
    else:
        pos = {v: i for i, v in enumerate(enumeration_order(g))}
    for a, b in equal.items():
        if sizes[a] != sizes[b]:
            raise ValueError("tied vertices need equal list sizes")
        if pos[b] > pos[a]:
            raise ValueError("a tied vertex must copy a vertex enumerated before it")
    decider = _Decider(budget, certificates)
    verdict = decider.decide(g, list(sizes), order, equal)
    verdict.nodes = decider.nodes
    return verdict


def complete_witness(g: Graph, sizes: Sequence[int], partial: Mapping[int, frozenset]) -> dict:
    """Fill unlisted vertices with fresh pairwise-disjoint colors."""
    nxt = max((c for s in partial.values() for c in s), default=-1) + 1
    full = {}
    for v in range(g.n):
        if v in partial:
            full[v] = frozenset(partial[v])
        else:
            full[v] = frozenset(range(nxt, nxt + sizes[v]))
            nxt += sizes[v]
    return full


def default_palette_sizes(sizes: Sequence[int]) -> list[int]:
    top = max(sizes)
    return sorted({sum(sizes), 2 * top, top + 1})


def sample_choosability(
    g: Graph,
    sizes: Sequence[int],
    trials: int,
    palette_sizes: Sequence[int] | None = None,
    seed: int = 0,
    max_failures: int = 10,
) -> SampleResult:
    """Random falsification: ``trials`` uniform assignments per palette size."""
    if len(sizes) != g.n:
        raise ValueError("size profile length must equal the vertex count")
    palettes = list(palette_sizes) if palette_sizes is not None else default_palette_sizes(sizes)
    rng = random.Random(seed)
    res = SampleResult()
    for p in palettes:
        if p < max(sizes, default=0):
            raise ValueError(f"palette of {p} colors cannot hold lists of size {max(sizes)}")
        fails = 0
        for _ in range(trials):
            lists = random_assignment(g.n, sizes, p, rng)
            res.tried += 1
            if is_list_colorable(g, lists) is None:
                fails += 1
                if len(res.failures) < max_failures:
                    res.failures.append(lists)
        res.per_palette[p] = fails
    return res


def list_chromatic_number(g: Graph, budget: int | None = None) -> ListChromatic:
    """chi_L bracketed by chi (3 when the core test fails) and degeneracy + 1."""
    if g.n == 0:
        return ListChromatic(0, 0, 0, "exact")
    if not g.edges:
        return ListChromatic(1, 1, 1, "exact")
    if is_two_choosable(g):
        return ListChromatic(2, 2, 2, "core-characterization")
    low = max(chromatic_number(g), 3)
    high = degeneracy_order(g).width + 1
    for k in range(low, high):
        verdict = is_choosable(g, [k] * g.n, budget=budget)
        if verdict.status == CHOOSABLE:
            return ListChromatic(k, k, k, "exact")
        if verdict.status == INCONCLUSIVE:
            return ListChromatic(None, k, high, "bounded")
    return ListChromatic(high, high, high, "exact")


# -- assignment file format -------------------------------------------------


def parse_assignment(lines: Iterable[str], n: int | None = None) -> dict[int, frozenset]:
    """Parse ``<vertex>: <c1> <c2> ...`` lines (1-based vertices)."""
    out: dict[int, frozenset] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise AssignmentFormatError("expected '<vertex>: <colors>'", lineno)
        try:
            v = int(head)
            colors = [int(c) for c in tail.split()]
        except ValueError:
            raise AssignmentFormatError("non-integer token", lineno) from None
        if v < 1 or (n is not None and v > n):
            raise AssignmentFormatError(f"vertex {v} out of range", lineno)
        if any(c < 0 for c in colors):
            raise AssignmentFormatError("colors must be nonnegative", lineno)
        if v - 1 in out:
            raise AssignmentFormatError(f"duplicate list for vertex {v}", lineno)
        out[v - 1] = frozenset(colors)
    return out


def format_assignment(lists: Mapping[int, Iterable[int]]) -> str:
    return "".join(
        f"{v + 1}: {' '.join(str(c) for c in sorted(lists[v]))}\n" for v in sorted(lists)
    )


def read_assignment(path, n: int | None = None) -> dict[int, frozenset]:
    with open(path) as fh:
        return parse_assignment(fh, n)
