"""Spectral radius, quotient matrices and Perron-vector diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from spextral.errors import ConvergenceError
from spextral.families import (
    CliqueJoinCliques,
    CliqueUnionIsolated,
    ExtremalFamily,
    LinearForestExtremal,
    Split,
    SplitPlus,
)
from spextral.graph import Graph, edges_inside, iter_bits, popcount

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100_000


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    vector: np.ndarray = field(repr=False)
    residual: float
    iterations: int


def _power(a: np.ndarray, x: np.ndarray, tol: float, max_iter: int):
    # iterate on A + I: keeps -rho (bipartite case) from competing with rho
    rho = float(x @ (a @ x))
    residual = math.inf
    for it in range(1, max_iter + 1):
        ax = a @ x
        rho = float(x @ ax)
        residual = float(np.linalg.norm(ax - rho * x))
        if residual <= tol:
            return rho, x, residual, it
        y = ax + x
        x = y / np.linalg.norm(y)
    return rho, x, residual, max_iter


def _component_radius(a: np.ndarray, tol: float, max_iter: int):
    m = a.shape[0]
    x0 = np.full(m, 1 / math.sqrt(m))
    rho, x, residual, its = _power(a, x0, tol, max_iter // 2)
    if residual <= tol:
        return rho, x, residual, its
    # one deterministic restart from a perturbed start
    x1 = np.ones(m) + 1e-3 * np.arange(m) / m
    x1 /= np.linalg.norm(x1)
    rho2, x2, residual2, its2 = _power(a, x1, tol, max_iter - max_iter // 2)
    if residual2 < residual:
        rho, x, residual = rho2, x2, residual2
    return rho, x, residual, its + its2


def power_iteration(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> SpectralResult:
    """Perron root and unit Perron vector of ``g``.

    Starts from the normalised all-ones vector. A disconnected graph is
    handled component by component; the result is the largest component's
    root with its vector padded by zeros.
    """
    if g.n == 0:
        raise ValueError("power iteration needs at least one vertex")
    if g.num_edges == 0:
        return SpectralResult(0.0, np.full(g.n, 1 / math.sqrt(g.n)), 0.0, 0)

    best = None
    total_its = 0
    for comp in g.components():
        verts = list(iter_bits(comp))
        if len(verts) == 1:
            continue
        a = g.to_numpy()[np.ix_(verts, verts)]
        rho, x, residual, its = _component_radius(a, tol, max_iter)
        total_its += its
        if residual > tol:
            vec = np.zeros(g.n)
            vec[verts] = np.abs(x)
            raise ConvergenceError(
                f"power iteration did not reach residual {tol:g} in {max_iter} steps "
                f"(residual {residual:.3g})",
                best=SpectralResult(rho, vec, residual, total_its),
            )
        if best is None or rho > best[0]:
            best = (rho, verts, x, residual)

    rho, verts, x, residual = best
    vec = np.zeros(g.n)
    vec[verts] = np.abs(x)
    return SpectralResult(rho, vec, residual, total_its)


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL) -> float:
    return power_iteration(g, tol).rho


def rho_split_closed(n: int, p: int) -> float:
    """Closed-form spectral radius of the complete split graph S_{n,p}."""
    if not 1 <= p <= n:
        raise ValueError(f"need 1 <= p <= n, got n={n}, p={p}")
    return (p - 1 + math.sqrt(4 * p * n - 4 * p * p + (p - 1) ** 2)) / 2


def hong_bound(g: Graph) -> float:
    """Upper bound on rho from the minimum degree and the edge count."""
    if g.n == 0:
        raise ValueError("bound needs at least one vertex")
    d, e, n = g.min_degree(), g.num_edges, g.n
    return (d - 1 + math.sqrt(8 * e - 4 * d * n + (d + 1) ** 2)) / 2


# ---- equitable partitions -------------------------------------------------


@dataclass(frozen=True)
class EquitablePartition:
    cells: tuple[tuple[int, ...], ...]
    quotient: tuple[tuple[int, ...], ...]

    @classmethod
    def from_cells(cls, g: Graph, cells) -> EquitablePartition:
        cells = tuple(tuple(c) for c in cells if len(c))
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        if sum(len(c) for c in cells) != g.n or (masks and sum(masks) != g.vertex_mask):
            raise ValueError("cells do not partition the vertex set")
        quotient = []
        for c in cells:
            row = [popcount(g.adj[c[0]] & m) for m in masks]
            for v in c[1:]:
                if [popcount(g.adj[v] & m) for m in masks] != row:
                    raise AssertionError(f"partition is not equitable at vertex {v}")
            quotient.append(tuple(row))
        return cls(cells, tuple(quotient))


def equitable_from_family(f: ExtremalFamily) -> EquitablePartition:
    g = f.build()
    n = f.n
    if isinstance(f, Split):
        cells = [range(f.h), range(f.h, n)]
    elif isinstance(f, SplitPlus):
        cells = [range(f.h), range(f.h, f.h + 2), range(f.h + 2, n)]
    elif isinstance(f, CliqueJoinCliques):
        split = f.k + f.d * (f.l - 1)
        cells = [range(f.k), range(f.k, split), range(split, n)]
    elif isinstance(f, LinearForestExtremal):
        hubs = f.k - 1
        cells = [range(hubs), range(hubs, hubs + 2 * f.d), range(hubs + 2 * f.d, n)]
    elif isinstance(f, CliqueUnionIsolated):
        cells = [range(f.c), range(f.c, n)]
    else:
        raise TypeError(f"no natural partition for {f!r}")
    return EquitablePartition.from_cells(g, [list(c) for c in cells])


def _charpoly(q) -> list[int]:
    """Coefficients of det(xI - Q), highest degree first, for c <= 3."""
    c = len(q)
    if c == 1:
        return [1, -q[0][0]]
    if c == 2:
        (a, b), (d, e) = q
        return [1, -(a + e), a * e - b * d]
    (a, b, cc), (d, e, f), (g, h, i) = q
    tr = a + e + i
    minors = (a * e - b * d) + (a * i - cc * g) + (e * i - f * h)
    det = a * (e * i - f * h) - b * (d * i - f * g) + cc * (d * h - e * g)
    return [1, -tr, minors, -det]


def _polyval(coeffs, x):
    v = 0.0
    for c in coeffs:
        v = v * x + c
    return v


def _largest_real_root(coeffs, bound: float) -> float:
    """Largest real root of a monic polynomial of degree <= 3 with roots in [-bound, bound].

    Critical points (closed form, since the derivative has degree <= 2) split
    the bracket into monotone pieces; each piece with a sign change is
    bisected 200 times. A double root sitting on a critical point is caught
    by its near-zero value there.
    """
    deg = len(coeffs) - 1
    deriv = [c * (deg - i) for i, c in enumerate(coeffs[:-1])]
    crit = []
    if len(deriv) == 2:
        crit = [-deriv[1] / deriv[0]]
    elif len(deriv) == 3:
        a, b, c = deriv
        disc = b * b - 4 * a * c
        if disc >= 0:
            s = math.sqrt(disc)
            crit = [(-b - s) / (2 * a), (-b + s) / (2 * a)]
    lo_end, hi_end = -bound - 1.0, bound + 1.0
    points = sorted([lo_end, hi_end] + [x for x in crit if lo_end < x < hi_end])
    roots = []
    scale = max(1.0, max(abs(c) for c in coeffs))
    for x in points:
        if abs(_polyval(coeffs, x)) <= 1e-12 * scale:
            roots.append(x)
    for lo, hi in zip(points, points[1:]):
        flo, fhi = _polyval(coeffs, lo), _polyval(coeffs, hi)
        if flo == 0 or fhi == 0 or (flo < 0) == (fhi < 0):
            continue
        for _ in range(200):
            mid = (lo + hi) / 2
            fm = _polyval(coeffs, mid)
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
        roots.append((lo + hi) / 2)
    if not roots:
        raise ConvergenceError("no real root found in the Gershgorin bracket")
    return max(roots)


def quotient_rho(p: EquitablePartition, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> float:
    """Largest real eigenvalue of the quotient matrix.

    Cells <= 3: bracketed root-finding on the characteristic polynomial.
    Larger quotients: power iteration on Q + I with Collatz-Wielandt bounds,
    which bracket the Perron root for a positive iterate.
    """
    q = p.quotient
    c = len(q)
    if c == 0:
        raise ValueError("empty partition")
    bound = float(max(sum(row) for row in q))
    if c <= 3:
        return _largest_real_root(_charpoly(q), bound)
    qm = np.array(q, dtype=float)
    x = np.ones(c)
    lo = hi = 0.0
    for _ in range(max_iter):
        y = qm @ x
        lo, hi = float(np.min(y / x)), float(np.max(y / x))
        if hi - lo <= tol:
            return (lo + hi) / 2
        x = y + x
        x /= np.linalg.norm(x)
    raise ConvergenceError("quotient power iteration did not converge", best=(lo + hi) / 2)


# ---- level sets and structure ---------------------------------------------


def level_parameters(k: int, l: int) -> tuple[int, int, float]:
    """(h, t, alpha) for the pattern kS_{l-1} ∪ P_l."""
    if k < 1 or l < 4:
        raise ValueError(f"need k >= 1 and l >= 4, got k={k}, l={l}")
    h = k + l // 2 - 1
    t = (l * l - l + 1) * k + (l * l + 3 * l - 2) // 2
    alpha = 1 / (2 * (h + 1) * t * t)
    return h, t, alpha


@dataclass(frozen=True)
class LevelSets:
    k: int
    l: int
    h: int
    t: int
    alpha: float
    z: int
    x_z: float
    R: frozenset[int]
    Rp: frozenset[int]
    Rpp: frozenset[int]
    boundary: frozenset[int]
    spectral: SpectralResult = field(repr=False)


def perron_level_sets(g: Graph, k: int, l: int, tol: float = DEFAULT_TOL) -> LevelSets:
    """Threshold the Perron vector at alpha, 4*alpha and 1/(2(h+1)) times its maximum.

    Vertices whose weight sits within ``tol`` of a threshold are reported in
    ``boundary``; their membership could flip under rounding.
    """
    h, t, alpha = level_parameters(k, l)
    if not g.is_connected():
        raise ValueError("level sets are defined for connected graphs only")
    res = power_iteration(g, tol)
    x = res.vector
    z = int(np.argmax(x))
    xz = float(x[z])
    cuts = (alpha * xz, 4 * alpha * xz, xz / (2 * (h + 1)))
    R = frozenset(v for v in range(g.n) if x[v] > cuts[0])
    Rp = frozenset(v for v in range(g.n) if x[v] > cuts[1])
    Rpp = frozenset(v for v in range(g.n) if x[v] >= cuts[2])
    boundary = frozenset(v for v in range(g.n) if any(abs(x[v] - c) < tol for c in cuts))
    return LevelSets(k, l, h, t, alpha, z, xz, R, Rp, Rpp, boundary, res)


@dataclass(frozen=True)
class StructureReport:
    A: bool  # G[outside] has no S_{l-1}
    B: bool  # z dominates the outside
    C: bool  # no edge outside
    D: bool  # at most one edge outside
    outside_edges: int
    Rpp_complete: bool
    dominating: bool
    levels: LevelSets = field(repr=False)

    def as_dict(self) -> dict:
        return {
            "A": self.A,
            "B": self.B,
            "C": self.C,
            "D": self.D,
            "outside_edges": self.outside_edges,
            "Rpp_complete": self.Rpp_complete,
            "dominating": self.dominating,
        }


def structure_claims(g: Graph, k: int, l: int, tol: float = DEFAULT_TOL) -> StructureReport:
    ls = perron_level_sets(g, k, l, tol)
    inside = 0
    for v in ls.Rpp:
        inside |= 1 << v
    outside = g.vertex_mask & ~inside
    star_free = all(popcount(g.adj[v] & outside) < l - 1 for v in iter_bits(outside))
    z_dominates = g.adj[ls.z] & outside == outside
    e_out = edges_inside(g, outside)
    complete_inside = all(g.adj[v] & inside == inside & ~(1 << v) for v in iter_bits(inside))
    dominating = all(g.adj[v] & outside == outside for v in iter_bits(inside))
    return StructureReport(star_free, z_dominates, e_out == 0, e_out <= 1, e_out, complete_inside, dominating, ls)
