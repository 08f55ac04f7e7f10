"""Star-path forest patterns and exact containment tests.

Containment is subgraph (not induced) containment. ``contains_forest`` places
path components by enumerating simple paths and then settles all star
components at once: once the hubs are fixed, handing out leaves is a bipartite
b-matching, so only the hub choice is searched. ``naive_injection_oracle`` is
a plain vertex-injection search over the pattern graph and shares no code with
it; the two are cross-checked in the test suite.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from spextral.families import path as path_graph
from spextral.families import star as star_graph
from spextral.families import union
from spextral.graph import Graph, iter_bits, popcount


@dataclass(frozen=True)
class ForestPattern:
    """A forbidden star-path forest.

    ``stars`` lists leaf counts (S_s has s leaves and s+1 vertices), ``paths``
    lists path orders. Both are stored sorted in descending order. Stars with
    one or two leaves are the paths P_2 and P_3 and are stored as such, so
    every forest has a single normal form.
    """

    stars: tuple[int, ...] = ()
    paths: tuple[int, ...] = ()

    def __post_init__(self):
        stars, paths = [], list(self.paths)
        for s in self.stars:
            if s < 1:
                raise ValueError(f"star leaf counts must be >= 1, got {s}")
            if s <= 2:
                paths.append(s + 1)
            else:
                stars.append(s)
        for p in paths:
            if p < 1:
                raise ValueError(f"path orders must be >= 1, got {p}")
        object.__setattr__(self, "stars", tuple(sorted(stars, reverse=True)))
        object.__setattr__(self, "paths", tuple(sorted(paths, reverse=True)))

    @property
    def total_order(self) -> int:
        return sum(s + 1 for s in self.stars) + sum(self.paths)

    @property
    def num_edges(self) -> int:
        return sum(self.stars) + sum(p - 1 for p in self.paths)

    def __str__(self) -> str:
        terms = [f"{c}S{s}" for s, c in sorted(Counter(self.stars).items(), reverse=True)]
        terms += [f"{c}P{p}" for p, c in sorted(Counter(self.paths).items(), reverse=True)]
        return "+".join(terms) if terms else "0P1"

    def graph(self) -> Graph:
        """The forest itself: paths first, then stars (hub first in each)."""
        g = Graph(0, ())
        for p in self.paths:
            g = union(g, path_graph(p))
        for s in self.stars:
            g = union(g, star_graph(s))
        return g


def star_path(k: int, l: int) -> ForestPattern:
    """kS_{l-1} ∪ P_l."""
    return ForestPattern(stars=(l - 1,) * k, paths=(l,))


_TERM = re.compile(r"(\d+)([SP])(\d+)")


def parse_pattern(text: str) -> ForestPattern:
    """Parse ``2S3+1P4``-style text (stars by leaf count, paths by order)."""
    stars, paths = [], []
    text = text.strip()
    if not text:
        raise ValueError("empty pattern")
    for term in text.split("+"):
        m = _TERM.fullmatch(term.strip())
        if not m:
            raise ValueError(f"bad pattern term {term!r}; expected e.g. 2S3 or 1P4")
        count, kind, size = int(m[1]), m[2], int(m[3])
        (stars if kind == "S" else paths).extend([size] * count)
    return ForestPattern(tuple(stars), tuple(paths))


# ---- paths ----------------------------------------------------------------


def _reach(adj, v: int, allowed: int) -> int:
    comp = frontier = 1 << v
    while frontier:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= adj[u]
        frontier = nxt & allowed & ~comp
        comp |= frontier
    return comp


def _extend(adj, v: int, avail: int, need: int) -> bool:
    # need: vertices still to add after v; avail excludes the path so far
    if need == 0:
        return True
    if need >= 3 and popcount(_reach(adj, v, avail | 1 << v)) - 1 < need:
        return False
    for u in iter_bits(adj[v] & avail):
        if _extend(adj, u, avail & ~(1 << u), need - 1):
            return True
    return False


def has_path(g: Graph, l: int) -> bool:
    """True iff g contains a path on ``l`` vertices."""
    if l < 1:
        raise ValueError("path order must be >= 1")
    if l > g.n:
        return False
    for comp in g.components():
        if popcount(comp) < l:
            continue
        for v in iter_bits(comp):
            if _extend(g.adj, v, comp & ~(1 << v), l - 1):
                return True
    return False


def longest_path_order(g: Graph) -> int:
    best = 1 if g.n else 0
    while best < g.n and has_path(g, best + 1):
        best += 1
    return best


def _paths_in(adj, p: int, avail: int) -> Iterator[tuple[int, ...]]:
    """Simple paths on ``p`` vertices inside ``avail``, each listed once."""
    if p == 1:
        for v in iter_bits(avail):
            yield (v,)
        return
    stack_path: list[int] = []

    def rec(v, free, need):
        if need == 0:
            if stack_path[0] < stack_path[-1]:
                yield tuple(stack_path)
            return
        for u in iter_bits(adj[v] & free):
            stack_path.append(u)
            yield from rec(u, free & ~(1 << u), need - 1)
            stack_path.pop()

    for v in iter_bits(avail):
        stack_path.append(v)
        yield from rec(v, avail & ~(1 << v), p - 1)
        stack_path.pop()


# ---- matching -------------------------------------------------------------


def max_matching(g: Graph) -> list[int]:
    """Maximum matching by Edmonds' blossom algorithm; ``mate[v]`` or -1."""
    n = g.n
    nbrs = [list(iter_bits(r)) for r in g.adj]
    match = [-1] * n

    def find_augmenting(root):
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = [root]

        def lca(a, b):
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark(v, b, child, blossom):
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for to in nbrs[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark(v, cur, to, blossom)
                    mark(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to, parent
                    used[match[to]] = True
                    queue.append(match[to])
        return -1, parent

    for root in range(n):
        if match[root] != -1 or not nbrs[root]:
            continue
        end, parent = find_augmenting(root)
        v = end
        while v != -1:
            pv = parent[v]
            nxt = match[pv]
            match[v] = pv
            match[pv] = v
            v = nxt
    return match


def max_matching_size(g: Graph) -> int:
    return sum(1 for m in max_matching(g) if m != -1) // 2


# ---- stars ----------------------------------------------------------------


def _assign_leaves(adj, hubs, sizes, avail) -> list[list[int]] | None:
    """Give hub i ``sizes[i]`` private leaves from ``avail``; None if impossible.

    Each hub is split into unit slots and the slots are matched to leaves by
    augmenting paths (Kuhn's algorithm).
    """
    slots = [i for i, s in enumerate(sizes) for _ in range(s)]
    owner: dict[int, int] = {}  # leaf -> slot

    def try_slot(slot, seen):
        for leaf in iter_bits(adj[hubs[slots[slot]]] & avail):
            if seen >> leaf & 1:
                continue
            seen |= 1 << leaf
            if leaf not in owner:
                owner[leaf] = slot
                return True, seen
            ok, seen = try_slot(owner[leaf], seen)
            if ok:
                owner[leaf] = slot
                return True, seen
        return False, seen

    for slot in range(len(slots)):
        ok, _ = try_slot(slot, 0)
        if not ok:
            return None
    leaves = [[] for _ in hubs]
    for leaf, slot in sorted(owner.items()):
        leaves[slots[slot]].append(leaf)
    return leaves


def _place_stars(adj, sizes, avail):
    if not sizes:
        return []
    m = len(sizes)
    if m == 1:
        s = sizes[0]
        for v in iter_bits(avail):
            nb = adj[v] & avail
            if popcount(nb) >= s:
                return [{"type": "star", "hub": v, "leaves": list(iter_bits(nb))[:s]}]
        return None
    candidates = [v for v in iter_bits(avail) if popcount(adj[v] & avail) >= sizes[-1]]
    if len(candidates) < m:
        return None
    chosen: list[int] = []

    def rec(i, used):
        if i == m:
            leaves = _assign_leaves(adj, chosen, sizes, avail & ~used)
            if leaves is None:
                return None
            return [{"type": "star", "hub": h, "leaves": lv} for h, lv in zip(chosen, leaves)]
        lo = chosen[-1] if i and sizes[i] == sizes[i - 1] else -1
        for v in candidates:
            if v <= lo or used >> v & 1:
                continue
            if popcount(adj[v] & avail & ~used) < sizes[i]:
                continue
            chosen.append(v)
            got = rec(i + 1, used | 1 << v)
            chosen.pop()
            if got is not None:
                return got
        return None

    return rec(0, 0)


# ---- forests --------------------------------------------------------------


def find_forest(g: Graph, f: ForestPattern) -> list[dict] | None:
    """An embedding of ``f`` into ``g`` as a list of components, or None.

    Paths are placed first (longest first), copies of the same path with
    increasing smallest vertex so each unordered placement is tried once.
    """
    if f.total_order > g.n:
        return None
    adj = g.adj
    paths, stars = f.paths, f.stars
    full = g.vertex_mask

    if stars:
        degs = sorted(g.degrees, reverse=True)
        for i, s in enumerate(stars):
            if degs[i] < s:
                return None

    placed: list[dict] = []
    # leftover vertex sets on which the stars are already known not to fit
    dead: set[tuple[int, int]] = set()
    need = [sum(paths[i:]) + sum(s + 1 for s in stars) for i in range(len(paths) + 1)]

    def rec(i, avail, prev_anchor):
        if popcount(avail) < need[i]:
            return None
        if i == len(paths):
            if (i, avail) in dead:
                return None
            got = _place_stars(adj, stars, avail)
            if got is None:
                dead.add((i, avail))
                return None
            return placed + got
        p = paths[i]
        same = i > 0 and paths[i - 1] == p
        for verts in _paths_in(adj, p, avail):
            anchor = min(verts)
            if same and anchor <= prev_anchor:
                continue
            mask = 0
            for v in verts:
                mask |= 1 << v
            placed.append({"type": "path", "vertices": list(verts)})
            got = rec(i + 1, avail & ~mask, anchor)
            placed.pop()
            if got is not None:
                return got
        return None

    return rec(0, full, -1)


def contains_forest(g: Graph, f: ForestPattern) -> bool:
    return find_forest(g, f) is not None


def is_free(g: Graph, f: ForestPattern) -> bool:
    return find_forest(g, f) is None


def verify_embedding(g: Graph, f: ForestPattern, embedding: list[dict]) -> bool:
    """Check a certificate: disjoint components, right shapes, real edges."""
    used = set()
    got_paths, got_stars = [], []
    for comp in embedding:
        if comp["type"] == "path":
            vs = comp["vertices"]
            if any(not g.has_edge(a, b) for a, b in zip(vs, vs[1:])):
                return False
            got_paths.append(len(vs))
        elif comp["type"] == "star":
            vs = [comp["hub"], *comp["leaves"]]
            if any(not g.has_edge(comp["hub"], x) for x in comp["leaves"]):
                return False
            got_stars.append(len(comp["leaves"]))
        else:
            return False
        if used.intersection(vs) or len(set(vs)) != len(vs):
            return False
        used.update(vs)
    return ForestPattern(tuple(got_stars), tuple(got_paths)) == f


# ---- independent oracle ---------------------------------------------------


def naive_injection_oracle(g: Graph, f: ForestPattern) -> bool:
    """Brute-force injection of the pattern's vertices into ``g``.

    Pattern vertices are assigned one at a time to unused host vertices; an
    assignment survives only if every pattern edge back to an already placed
    vertex lands on a host edge. No use is made of the forest structure.
    """
    pat = f.graph()
    k = pat.n
    if k > g.n:
        return False
    back = [[u for u in iter_bits(pat.adj[v]) if u < v] for v in range(k)]
    image = [-1] * k

    def rec(i, used):
        if i == k:
            return True
        for x in range(g.n):
            if used >> x & 1:
                continue
            if all(g.adj[x] >> image[u] & 1 for u in back[i]):
                image[i] = x
                if rec(i + 1, used | 1 << x):
                    return True
        return False

    return rec(0, 0)
