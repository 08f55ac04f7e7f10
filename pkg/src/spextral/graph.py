"""Immutable simple graphs on bitset adjacency, plus graph6 I/O.

Vertices are the integers ``0..n-1``. Row ``v`` of the adjacency is a Python
int whose bit ``u`` is set iff ``uv`` is an edge, so vertex sets are plain
ints and set algebra is a handful of bit operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from spextral.errors import Graph6Error


def popcount(x: int) -> int:
    return x.bit_count()


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vs, n: int) -> int:
    """Turn an iterable of vertices (or an int mask) into a mask, range-checked."""
    if isinstance(vs, int):
        if vs < 0 or vs >> n:
            raise ValueError(f"vertex mask {vs:#x} out of range for n={n}")
        return vs
    mask = 0
    for v in vs:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range for n={n}")
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full or row >> v & 1:
                raise ValueError(f"bad adjacency row for vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency at ({v}, {u})")

    # constructors

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix) -> Graph:
        a = np.asarray(matrix)
        n = a.shape[0]
        rows = []
        for v in range(n):
            row = 0
            for u in np.flatnonzero(a[v]):
                row |= 1 << int(u)
            rows.append(row)
        return cls(n, tuple(rows))

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...]) -> Graph:
        # skips the O(e) symmetry check; only for rows built symmetric by construction
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    # basic queries

    @cached_property
    def num_edges(self) -> int:
        total = sum(popcount(r) for r in self.adj)
        return total // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(popcount(r) for r in self.adj)

    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, row in enumerate(self.adj):
            for v in iter_bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def non_edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if not self.adj[u] >> v & 1:
                    out.append((u, v))
        return out

    def with_edge(self, u: int, v: int) -> Graph:
        if u == v:
            raise ValueError("loops are not allowed")
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph._trusted(self.n, tuple(rows))

    def without_edge(self, u: int, v: int) -> Graph:
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph._trusted(self.n, tuple(rows))

    def complement(self) -> Graph:
        full = self.vertex_mask
        return Graph._trusted(
            self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj))
        )

    def relabel(self, order: list[int]) -> Graph:
        """Graph whose vertex ``i`` is the old vertex ``order[i]``."""
        pos = {old: new for new, old in enumerate(order)}
        rows = []
        for old in order:
            row = 0
            for u in iter_bits(self.adj[old]):
                row |= 1 << pos[u]
            rows.append(row)
        return Graph._trusted(self.n, tuple(rows))

    def to_numpy(self, dtype=float) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def components(self) -> list[int]:
        """Connected components as vertex masks, ordered by smallest vertex."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for v in iter_bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def __str__(self) -> str:
        return f"Graph(n={self.n}, e={self.num_edges})"


# ---- set-level quantities -------------------------------------------------


def edges_between(g: Graph, a, b) -> int:
    """Number of ordered pairs (x, y) with x in A, y in B and xy an edge.

    For disjoint A and B this is the usual count of crossing edges. An edge
    with both ends in A ∩ B is counted twice, which is the convention under
    which e(A,B) = e(A, B∖A) + 2e(G[A∩B]) + e(A∖B, A∩B) holds exactly.
    """
    am = to_mask(a, g.n)
    bm = to_mask(b, g.n)
    return sum(popcount(g.adj[x] & bm) for x in iter_bits(am))


def edges_inside(g: Graph, a) -> int:
    am = to_mask(a, g.n)
    return sum(popcount(g.adj[x] & am) for x in iter_bits(am)) // 2


def neighborhood(g: Graph, v: int) -> frozenset[int]:
    _check_vertex(g, v)
    return frozenset(iter_bits(g.adj[v]))


def second_neighborhood(g: Graph, v: int) -> frozenset[int]:
    """Vertices at distance exactly two from ``v``."""
    _check_vertex(g, v)
    first = g.adj[v]
    reach = 0
    for u in iter_bits(first):
        reach |= g.adj[u]
    return frozenset(iter_bits(reach & ~first & ~(1 << v)))


def induced_subgraph(g: Graph, vertices) -> Graph:
    mask = to_mask(vertices, g.n)
    order = list(iter_bits(mask))
    pos = {old: new for new, old in enumerate(order)}
    rows = []
    for old in order:
        row = 0
        for u in iter_bits(g.adj[old] & mask):
            row |= 1 << pos[u]
        rows.append(row)
    return Graph._trusted(len(order), tuple(rows))


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for n={g.n}")


# ---- graph6 ---------------------------------------------------------------

_HEADER = ">>graph6<<"


def _encode_size(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 68719476736:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError(f"graph6 cannot encode n={n}")


def graph6_encode(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k : k + 6]:
            v = (v << 1) | b
        body.append(chr(v + 63))
    return _encode_size(g.n) + "".join(body)


def graph6_decode(text: str) -> Graph:
    s = text.rstrip("\n")
    base = 0
    if s.startswith(_HEADER):
        s = s[len(_HEADER) :]
        base = len(_HEADER)
    if not s:
        raise Graph6Error("empty graph6 string", base)
    data = []
    for i, ch in enumerate(s):
        c = ord(ch)
        if c < 63 or c > 126:
            raise Graph6Error(f"illegal byte {c!r}", base + i)
        data.append(c - 63)

    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) >= 2 and data[1] != 63:
        if len(data) < 4:
            raise Graph6Error("truncated size field", base + len(data))
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    else:
        if len(data) < 8:
            raise Graph6Error("truncated size field", base + len(data))
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        pos = 8

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - pos < need:
        raise Graph6Error(f"expected {need} data bytes, got {len(data) - pos}", base + len(data))
    if len(data) - pos > need:
        raise Graph6Error("trailing garbage", base + pos + need)

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = data[pos + k // 6]
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if need and nbits % 6:
        pad = data[pos + need - 1] & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise Graph6Error("nonzero padding bits", base + pos + need - 1)
    return Graph._trusted(n, tuple(rows))


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if not line:
            continue
        yield graph6_decode(line)


# ---- random graphs ----------------------------------------------------------


def random_graph(n: int, p: float, rng) -> Graph:
    """G(n, p) drawn with ``rng`` (a ``random.Random``)."""
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_bipartite(a: int, b: int, p: float, rng) -> Graph:
    """Random subgraph of K_{a,b}; parts are 0..a-1 and a..a+b-1."""
    return Graph.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b) if rng.random() < p])
