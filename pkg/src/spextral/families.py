"""Named graphs and the extremal constructions.

Every builder fixes its vertex layout: clique or hub vertices come first, in
index order, followed by the remaining parts in the order they appear in the
family's name. Diagnostics rely on this to find the hubs without an
isomorphism search.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb
from typing import Union

from spextral.graph import Graph


def empty(n: int) -> Graph:
    return Graph._trusted(n, (0,) * n)


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(n, tuple(full & ~(1 << v) for v in range(n)))


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    """S_leaves = K_{1,leaves}; hub is vertex 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    rows = g.adj + tuple(r << shift for r in h.adj)
    return Graph._trusted(g.n + h.n, rows)


def join(g: Graph, h: Graph) -> Graph:
    shift = g.n
    gmask = (1 << g.n) - 1
    hmask = ((1 << h.n) - 1) << shift
    rows = tuple(r | hmask for r in g.adj) + tuple((r << shift) | gmask for r in h.adj)
    return Graph._trusted(g.n + h.n, rows)


def copies(k: int, h: Graph) -> Graph:
    if k < 0:
        raise ValueError("k must be non-negative")
    out = empty(0)
    for _ in range(k):
        out = union(out, h)
    return out


def complete_bipartite(a: int, b: int) -> Graph:
    return join(empty(a), empty(b))


# ---- extremal families ----------------------------------------------------


@dataclass(frozen=True)
class Split:
    """S_{n,h} = K_h ∨ K̄_{n-h}. Clique on 0..h-1."""

    n: int
    h: int

    def __post_init__(self):
        if not 0 <= self.h <= self.n:
            raise ValueError(f"Split needs 0 <= h <= n, got n={self.n}, h={self.h}")

    def build(self) -> Graph:
        return join(complete(self.h), empty(self.n - self.h))

    def edge_count(self) -> int:
        return self.h * self.n - self.h * (self.h + 1) // 2


@dataclass(frozen=True)
class SplitPlus:
    """S⁺_{n,h}: S_{n,h} plus the edge {h, h+1} inside the independent set."""

    n: int
    h: int

    def __post_init__(self):
        if not 0 <= self.h <= self.n:
            raise ValueError(f"SplitPlus needs 0 <= h <= n, got n={self.n}, h={self.h}")
        if self.n - self.h < 2:
            raise ValueError(f"SplitPlus needs n - h >= 2, got n={self.n}, h={self.h}")

    def build(self) -> Graph:
        return join(complete(self.h), union(complete(2), empty(self.n - self.h - 2)))

    def edge_count(self) -> int:
        return Split(self.n, self.h).edge_count() + 1


@dataclass(frozen=True)
class CliqueJoinCliques:
    """K_k ∨ (d K_{l-1} ∪ K_r) with n = k + d(l-1) + r and 0 <= r < l-1.

    Layout: the k hub vertices, then the d cliques of order l-1 one after
    another, then the K_r.
    """

    n: int
    k: int
    l: int
    r: int

    def __post_init__(self):
        if self.k < 0 or self.l < 2:
            raise ValueError(f"CliqueJoinCliques needs k >= 0 and l >= 2, got k={self.k}, l={self.l}")
        if not 0 <= self.r < self.l - 1:
            raise ValueError(f"CliqueJoinCliques needs 0 <= r < l-1, got r={self.r}, l={self.l}")
        rest = self.n - self.k - self.r
        if rest < 0 or rest % (self.l - 1):
            raise ValueError(
                f"CliqueJoinCliques needs n - k - r to be a non-negative multiple of l-1, "
                f"got n={self.n}, k={self.k}, r={self.r}, l={self.l}"
            )

    @property
    def d(self) -> int:
        return (self.n - self.k - self.r) // (self.l - 1)

    def build(self) -> Graph:
        inner = union(copies(self.d, complete(self.l - 1)), complete(self.r))
        return join(complete(self.k), inner)

    def edge_count(self) -> int:
        k, n = self.k, self.n
        return comb(k, 2) + k * (n - k) + self.d * comb(self.l - 1, 2) + comb(self.r, 2)


@dataclass(frozen=True)
class LinearForestExtremal:
    """F_{n,k} = K_{k-1} ∨ (d K_2 ∪ K_s) with n - (k-1) = 2d + s, 0 <= s < 2."""

    n: int
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"LinearForestExtremal needs k >= 1, got k={self.k}")
        if self.n < self.k - 1:
            raise ValueError(f"LinearForestExtremal needs n >= k-1, got n={self.n}, k={self.k}")

    @property
    def d(self) -> int:
        return (self.n - self.k + 1) // 2

    @property
    def s(self) -> int:
        return (self.n - self.k + 1) % 2

    def build(self) -> Graph:
        inner = union(copies(self.d, complete(2)), complete(self.s))
        return join(complete(self.k - 1), inner)

    def edge_count(self) -> int:
        hubs = self.k - 1
        return comb(hubs, 2) + hubs * (self.n - hubs) + self.d


@dataclass(frozen=True)
class CliqueUnionIsolated:
    """K_c ∪ K̄_{n-c}. Only needed for the small-n matching cases."""

    n: int
    c: int

    def __post_init__(self):
        if not 0 <= self.c <= self.n:
            raise ValueError(f"CliqueUnionIsolated needs 0 <= c <= n, got n={self.n}, c={self.c}")

    def build(self) -> Graph:
        return union(complete(self.c), empty(self.n - self.c))

    def edge_count(self) -> int:
        return comb(self.c, 2)


ExtremalFamily = Union[Split, SplitPlus, CliqueJoinCliques, LinearForestExtremal, CliqueUnionIsolated]


def build(f: ExtremalFamily) -> Graph:
    return f.build()


def describe(f: ExtremalFamily) -> dict:
    return {"kind": type(f).__name__, **asdict(f)}
