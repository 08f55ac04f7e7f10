"""Exhaustive small-graph search: canonical forms, isomorph-free generation
and brute-force extremal oracles.

Generation is by canonical augmentation. A graph on m+1 vertices is produced
from a graph on m vertices by adding a vertex joined to a subset S, and the
child is kept only when the new vertex lies in the orbit of the child's
canonical deletion vertex (the max-invariant vertex whose rooted canonical
code is smallest). Isomorphic children of the same parent are merged by that
rooted code. Every isomorphism class then appears exactly once, with no global
table.

F-freeness is inherited by induced subgraphs, so the oracles prune any child
that already contains the pattern.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from spextral.containment import ForestPattern, contains_forest
from spextral.graph import Graph, graph6_decode, graph6_encode, iter_bits, popcount
from spextral.errors import ConvergenceError
from spextral.spectral import power_iteration

MAX_ORDER = 10
GATED_ORDER = 10
SCHEMA = "spextral/1"
DEFAULT_RHO_TOL = 1e-9


# ---- canonical labelling --------------------------------------------------


def _refine(adj, cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.

    Each round splits every cell by the vector of neighbour counts into all
    current cells; fragments keep the position of their parent cell and are
    ordered by that vector, so the result is isomorphism-invariant.
    """
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        out = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in c:
                a = adj[v]
                groups.setdefault(tuple([(a & m).bit_count() for m in masks]), []).append(v)
            if len(groups) == 1:
                out.append(c)
            else:
                out.extend(groups[key] for key in sorted(groups))
        if len(out) == len(cells):
            return out
        cells = out


def _code(adj, lab: list[int]) -> int:
    # graph6 bit order: x(0,1), x(0,2), x(1,2), x(0,3), ...
    code = 0
    for j in range(1, len(lab)):
        row = adj[lab[j]]
        for i in range(j):
            code = (code << 1) | (row >> lab[i] & 1)
    return code


def _orbit_roots(perms: list[list[int]], n: int) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for a, b in enumerate(p):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return [find(x) for x in range(n)]


def canonical_labelling(adj, n: int, cells: list[list[int]] | None = None) -> tuple[int, list[int]]:
    """(code, labelling) minimising the graph6 bit string over the search tree."""
    code, lab, _ = _canon(adj, n, cells)
    return code, lab


def _canon(adj, n: int, cells):
    """Returns (code, labelling, automorphisms found).

    The tree individualises vertices of the first non-singleton cell after
    each refinement. Leaves with equal codes yield automorphisms, which prune
    sibling branches in the same orbit of the pointwise stabiliser of the
    current prefix. Pruning only ever uses automorphisms already found, so an
    empty automorphism list means the whole tree was searched and the group
    (of the coloured graph) is trivial.
    """
    if n == 0:
        return 0, [], []
    if cells is None:
        cells = [list(range(n))]
    best: list = [None, None]
    autos: list[list[int]] = []
    first: list = [None, None]

    def record_auto(lab_a, lab_b):
        perm = [0] * n
        for a, b in zip(lab_a, lab_b):
            perm[a] = b
        autos.append(perm)

    def search(cells, prefix):
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            lab = [c[0] for c in cells]
            code = _code(adj, lab)
            if first[0] is None:
                first[0], first[1] = code, lab
            elif code == first[0]:
                record_auto(first[1], lab)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, lab
            elif code == best[0] and best[1] is not first[1]:
                record_auto(best[1], lab)
            return
        tried: list[int] = []
        for v in sorted(cells[target]):
            if tried:
                stab = [p for p in autos if all(p[x] == x for x in prefix)]
                if stab:
                    roots = _orbit_roots(stab, n)
                    if any(roots[v] == roots[u] for u in tried):
                        continue
            rest = [u for u in cells[target] if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1 :]
            search(child, prefix + [v])
            tried.append(v)

    search([list(c) for c in cells], [])
    return best[0], best[1], autos


def canonical_form(g: Graph) -> Graph:
    _, lab = canonical_labelling(g.adj, g.n)
    return g.relabel(lab)


def canonical_graph6(g: Graph) -> str:
    return graph6_encode(canonical_form(g))


def _rooted_code(adj, n: int, v: int) -> int:
    return canonical_labelling(adj, n, [[v], [u for u in range(n) if u != v]])[0]


# ---- generation -----------------------------------------------------------


def _children(g: Graph, keep: Callable[[Graph], bool] | None) -> list[Graph]:
    """Canonical children of ``g`` (one vertex more), ordered by attaching subset."""
    m = g.n
    adj = g.adj
    degs = g.degrees
    # with a trivial parent group, distinct subsets give non-isomorphic children
    asymmetric = not _canon(adj, m, None)[2]
    found: dict[int, tuple[int, Graph] | None] = {}
    plain: list[tuple[int, Graph]] = []
    new_bit = 1 << m
    for s in range(1 << m):
        ds = popcount(s)
        # the new vertex must have maximum degree in the child
        if any(degs[u] + (s >> u & 1) > ds for u in range(m)):
            continue
        rows = tuple(adj[u] | new_bit if s >> u & 1 else adj[u] for u in range(m)) + (s,)
        cdegs = [degs[u] + (s >> u & 1) for u in range(m)] + [ds]
        key_new = sum(cdegs[u] for u in iter_bits(s))
        ties = []
        reject = False
        for u in range(m):
            if cdegs[u] == ds:
                ku = sum(cdegs[w] for w in iter_bits(rows[u]))
                if ku > key_new:
                    reject = True
                    break
                if ku == key_new:
                    ties.append(u)
        if reject:
            continue
        child = Graph._trusted(m + 1, rows)
        # pattern test first: it is cheaper than canonising a doomed child
        if keep is not None and not keep(child):
            continue
        if asymmetric and not ties:
            plain.append((s, child))
            continue
        code_new = _rooted_code(rows, m + 1, m)
        if code_new in found:
            continue
        if any(_rooted_code(rows, m + 1, u) < code_new for u in ties):
            found[code_new] = None
            continue
        found[code_new] = (s, child)
    out = [item for item in found.values() if item is not None] + plain
    out.sort(key=lambda item: item[0])
    return [h for _, h in out]


def _descend(g: Graph, n: int, keep) -> Iterator[Graph]:
    if g.n == n:
        yield g
        return
    for c in _children(g, keep):
        yield from _descend(c, n, keep)


def _frontier(n: int, keep, depth: int) -> list[Graph]:
    level = [Graph._trusted(1, (0,))]
    if keep is not None:
        level = [g for g in level if keep(g)]
    while level and level[0].n < depth:
        level = [c for g in level for c in _children(g, keep)]
    return level


def _check_order(n: int, allow_large: bool) -> None:
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"n must be in 1..{MAX_ORDER}, got {n}")
    if n >= GATED_ORDER and not allow_large:
        raise ValueError(f"n={n} runs for minutes; pass allow_large=True to enable it")


def enumerate_graphs(n: int, keep: Callable[[Graph], bool] | None = None, allow_large: bool = False) -> Iterator[Graph]:
    """One graph per isomorphism class on n vertices, in a fixed order.

    ``keep`` must be inherited by induced subgraphs; graphs failing it are
    pruned with their whole subtree.
    """
    _check_order(n, allow_large)
    for g in _frontier(n, keep, 1):
        yield from _descend(g, n, keep)


# ---- reports --------------------------------------------------------------


@dataclass
class SearchReport:
    objective: str
    n: int
    pattern: str
    best_value: float | int | None
    certificates: list[str]
    enumerated: int
    elapsed: float = 0.0
    tol: float | None = None
    extra: dict = field(default_factory=dict)

    def as_dict(self, timing: bool = False) -> dict:
        out = {
            "schema": SCHEMA,
            "objective": self.objective,
            "n": self.n,
            "pattern": self.pattern,
            "best_value": _fmt(self.best_value),
            "certificates": self.certificates,
            "enumerated": self.enumerated,
        }
        if self.tol is not None:
            out["tol"] = self.tol
        if self.extra:
            out.update(self.extra)
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.as_dict(timing), sort_keys=True)


def _fmt(v):
    if isinstance(v, float):
        return float(f"{v:.15g}")
    return v


class _Free:
    """Picklable hereditary predicate: the graph does not contain ``pattern``."""

    def __init__(self, pattern: ForestPattern):
        self.pattern = pattern

    def __call__(self, g: Graph) -> bool:
        if g.n < self.pattern.total_order:
            return True
        return not contains_forest(g, self.pattern)


def _objective(kind: str, g: Graph) -> float | int:
    if kind == "edges":
        return g.num_edges
    try:
        return power_iteration(g).rho
    except ConvergenceError as exc:
        code = graph6_encode(g)
        raise ConvergenceError(f"{exc} on graph {code}", best=exc.best, graph6=code) from exc


def _scan(graphs: Iterable[Graph], kind: str, tol: float):
    """(count, best, [(value, graph)]) keeping everything within ``tol`` of the running best."""
    count = 0
    best = None
    keep: list[tuple[float, Graph]] = []
    for g in graphs:
        count += 1
        v = _objective(kind, g)
        if best is None or v > best + tol:
            best = v
            keep = [(x, h) for x, h in keep if x >= best - tol]
        if v >= best - tol:
            keep.append((v, g))
        if v > best:
            best = v
    return count, best, keep


def _work_unit(args):
    root, n, pattern, kind, tol = args
    keep = _Free(pattern)
    return _scan(_descend(root, n, keep), kind, tol)


def _split_depth(n: int) -> int:
    return max(1, min(n - 1, 5))


def _run_search(n: int, pattern: ForestPattern, kind: str, tol: float, jobs: int, allow_large: bool, universe):
    start = time.perf_counter()
    if universe is not None:
        keep = _Free(pattern)
        graphs = (g for g in universe if g.n == n and keep(g))
        count, best, cands = _scan(graphs, kind, tol)
    else:
        _check_order(n, allow_large)
        keep = _Free(pattern)
        roots = _frontier(n, keep, _split_depth(n))
        units = [(r, n, pattern, kind, tol) for r in roots]
        if jobs > 1 and len(units) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                parts = list(ex.map(_work_unit, units, chunksize=max(1, len(units) // (4 * jobs))))
        else:
            parts = [_work_unit(u) for u in units]
        count, best, cands = 0, None, []
        for c, b, k in parts:
            count += c
            cands.extend(k)
            if b is not None and (best is None or b > best):
                best = b
    if best is None:
        certs = []
    else:
        certs = sorted({canonical_graph6(g) for v, g in cands if v >= best - tol})
    elapsed = time.perf_counter() - start
    return best, certs, count, elapsed


def brute_ex(n: int, pattern: ForestPattern, jobs: int = 1, allow_large: bool = False, universe=None) -> SearchReport:
    """ex(n, F) by exhaustive search, with every extremal graph up to isomorphism."""
    best, certs, count, elapsed = _run_search(n, pattern, "edges", 0, jobs, allow_large, universe)
    return SearchReport("edges", n, str(pattern), best, certs, count, elapsed)


def brute_ex_sp(
    n: int,
    pattern: ForestPattern,
    tol: float = DEFAULT_RHO_TOL,
    jobs: int = 1,
    allow_large: bool = False,
    universe=None,
) -> SearchReport:
    """Maximum spectral radius over F-free graphs of order n.

    Every graph within ``tol`` of the maximum is a certificate, so near-ties
    are reported rather than broken.
    """
    best, certs, count, elapsed = _run_search(n, pattern, "rho", tol, jobs, allow_large, universe)
    return SearchReport("rho", n, str(pattern), best, certs, count, elapsed, tol=tol)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("SPEXTRAL_JOBS", "1")))
    except ValueError:
        return 1


def load_universe(path) -> list[Graph]:
    with open(path) as fh:
        return [graph6_decode(line.strip()) for line in fh if line.strip()]


# ---- second oracle --------------------------------------------------------


def _greedy_maximal(n: int, free: _Free, order: list[tuple[int, int]]) -> Graph:
    g = Graph._trusted(n, (0,) * n)
    for u, v in order:
        h = g.with_edge(u, v)
        if free(h):
            g = h
    return g


def maximal_free_count(n: int, pattern: ForestPattern, seed: int = 0) -> int:
    """ex(n, F) by branch-and-bound over edge additions.

    Works up from the empty graph one edge at a time, merging isomorphic
    states by canonical code. A state with m edges whose individually
    addable non-edges number a can end with at most m + a edges, so it is
    dropped when that cannot beat the best maximal graph found by a few
    seeded greedy runs.
    """
    import random

    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"n must be in 1..{MAX_ORDER}, got {n}")
    free = _Free(pattern)
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    best = 0
    for _ in range(8):
        rng.shuffle(pairs)
        best = max(best, _greedy_maximal(n, free, pairs).num_edges)

    level = {0: Graph._trusted(n, (0,) * n)}
    m = 0
    while level:
        nxt: dict[int, Graph] = {}
        for g in level.values():
            addable = [h for h in (g.with_edge(u, v) for u, v in g.non_edges()) if free(h)]
            if m + len(addable) <= best:
                continue
            for h in addable:
                code, _ = canonical_labelling(h.adj, n)
                nxt.setdefault(code, h)
        if nxt:
            m += 1
            best = max(best, m)
        level = nxt
    return best
