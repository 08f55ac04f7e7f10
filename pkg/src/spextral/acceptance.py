"""The acceptance criteria as runnable checks.

Each check returns ``(passed, detail)``; the runner times it and compares
the time against the budget. Both ``tests/test_acceptance.py`` and the
``verify`` command go through :func:`run`.

The n = 10 oracle run takes minutes and only happens when the environment
variable ``SPEXTRAL_FULL`` is set to 1.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass
from itertools import product
from typing import Callable

from spextral import families as fam
from spextral.containment import (
    ForestPattern,
    contains_forest,
    has_path,
    is_free,
    naive_injection_oracle,
    parse_pattern,
    star_path,
)
from spextral.graph import (
    Graph,
    edges_between,
    edges_inside,
    random_bipartite,
    random_graph,
)
from spextral.search import brute_ex, brute_ex_sp, enumerate_graphs
from spextral.spectral import (
    equitable_from_family,
    hong_bound,
    perron_level_sets,
    power_iteration,
    quotient_rho,
    rho_split_closed,
    structure_claims,
)
from spextral.turan import (
    predicted_spectral_extremal,
    turan_star_forest,
    turan_star_path,
)

SUITES = ("formulas", "oracles", "spectral")


@dataclass
class Outcome:
    number: int
    title: str
    passed: bool
    detail: str
    elapsed: float
    budget: float | None

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        limit = f" / {self.budget:g} s" if self.budget else ""
        return f"[{tag}] criterion {self.number:2d}: {self.title} ({self.elapsed:.1f} s{limit}) {self.detail}"

    def as_dict(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "detail": self.detail,
            "budget": self.budget,
        }


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    suite: str
    budget: float | None
    check: Callable[[], tuple[bool, str]]


def full_mode() -> bool:
    return os.environ.get("SPEXTRAL_FULL", "") == "1"


# search results are shared between the oracle criteria and the determinism one
_reports: dict[tuple, str] = {}


def _search(kind: str, n: int, pattern: str, jobs: int):
    f = parse_pattern(pattern)
    big = n >= 10
    if kind == "ex":
        r = brute_ex(n, f, jobs=jobs, allow_large=big)
    else:
        r = brute_ex_sp(n, f, jobs=jobs, allow_large=big)
    _reports[(kind, n, pattern, jobs)] = r.to_json()
    return r


# ---- 1 ----------------------------------------------------------------------


def closed_form_vs_iteration():
    worst, where = 0.0, None
    for p in range(1, 7):
        for n in range(p, 201):
            err = abs(rho_split_closed(n, p) - power_iteration(fam.Split(n, p).build()).rho)
            if err > worst:
                worst, where = err, (n, p)
    return worst <= 1e-9, f"max error {worst:.2e} at (n,p)={where}"


# ---- 2 ----------------------------------------------------------------------


def _quotient_grid():
    for k, l in product(range(1, 4), range(4, 7)):
        h = k + l // 2 - 1
        for n in range(h + 2, 121):
            yield fam.Split(n, h)
            yield fam.SplitPlus(n, h)
            yield fam.CliqueJoinCliques(n, k, l, (n - k) % (l - 1))
    for k in range(1, 4):
        for n in range(k + 1, 121):
            yield fam.LinearForestExtremal(n, k)


def quotient_exactness():
    worst, where, count = 0.0, None, 0
    for f in _quotient_grid():
        g = f.build()
        if not g.is_connected():
            continue
        err = abs(quotient_rho(equitable_from_family(f)) - power_iteration(g).rho)
        count += 1
        if err > worst:
            worst, where = err, f
    return worst <= 1e-9, f"{count} graphs, max error {worst:.2e} at {where}"


# ---- 3 ----------------------------------------------------------------------


def turan_vs_oracle():
    orders = [8, 9, 10] if full_mode() else [8, 9]
    expected = {8: 21, 9: 22, 10: 24}
    got, ok = {}, True
    for n in orders:
        r = _search("ex", n, "2S3", 1)
        got[n] = r.best_value
        formula = turan_star_forest(n, 2, 3).value
        ok &= r.best_value == expected[n] == formula
    stars = {}
    for n in range(5, 10):
        r = _search("ex", n, "1S3", 1)
        stars[n] = r.best_value
        ok &= r.best_value == 2 * n // 2
    skipped = "" if full_mode() else "; n=10 not run (set SPEXTRAL_FULL=1)"
    return ok, f"ex(n,2S3)={got} ex(n,S3)={stars}{skipped}"


# ---- 4 ----------------------------------------------------------------------


def construction_identity():
    checked, split_checked, bad = 0, 0, []
    for k, l in product(range(1, 5), (4, 6, 8)):
        for n in range(k, 201):
            value, _ = turan_star_path(n, k, l)
            r = (n - k) % (l - 1)
            e = fam.CliqueJoinCliques(n, k, l, r).build().num_edges
            checked += 1
            if e != value.value:
                bad.append((n, k, l))
            if r in (l // 2, (l - 2) // 2) and n >= k + l // 2 - 1:
                split_checked += 1
                if fam.Split(n, k + l // 2 - 1).build().num_edges != e:
                    bad.append(("split", n, k, l))
    return not bad, f"{checked} tuples, {split_checked} two-family cases, mismatches {bad[:5]}"


# ---- 5 ----------------------------------------------------------------------


def _prediction_hosts():
    """(pattern, family) pairs for every prediction on hosts of order <= 14."""
    for k, l in ((1, 4), (1, 5)):
        f = star_path(k, l)
        for n in range(6, 15):
            _, pred = turan_star_path(n, k, l)
            for fa in pred.families:
                yield f, fa
            for fa in predicted_spectral_extremal(f, n).families:
                yield f, fa
    for text in ("2S3+2P4", "1S4+2P5"):
        f = parse_pattern(text)
        for n in range(6, 15):
            for fa in predicted_spectral_extremal(f, n).families:
                yield f, fa
    for k in (2, 3, 4):
        f = parse_pattern(f"{k}P3")
        for n in range(6, 15):
            for fa in predicted_spectral_extremal(f, n).families:
                yield f, fa


def predictions_are_free():
    pairs = list(dict.fromkeys(_prediction_hosts()))
    bad = [(str(f), fa) for f, fa in pairs if not is_free(fa.build(), f)]
    smallest = sorted(pairs, key=lambda p: (p[1].n, str(p[0]), str(p[1])))[:3]
    oracle_bad = [(str(f), fa) for f, fa in smallest if naive_injection_oracle(fa.build(), f)]
    ok = not bad and not oracle_bad
    return ok, f"{len(pairs)} (pattern, family) pairs, containing: {bad[:3]}, oracle disagreements: {oracle_bad}"


# ---- 6 ----------------------------------------------------------------------

PATTERN_GRID = ("1P4", "1S3", "2S3", "1S3+1P4", "2P2", "3P2", "2P3")


def random_pattern(rng: random.Random, max_order: int) -> ForestPattern:
    while True:
        stars = [rng.randint(1, 4) for _ in range(rng.randint(0, 2))]
        paths = [rng.randint(2, 5) for _ in range(rng.randint(0, 2))]
        if not stars and not paths:
            continue
        f = ForestPattern(tuple(stars), tuple(paths))
        if f.total_order <= max_order:
            return f


def oracle_equivalence():
    grid = [parse_pattern(p) for p in PATTERN_GRID]
    disagree, checked = [], 0
    for n in range(1, 7):
        for g in enumerate_graphs(n):
            for f in grid:
                checked += 1
                if contains_forest(g, f) != naive_injection_oracle(g, f):
                    disagree.append((g, str(f)))
    rng = random.Random(20240601)
    for _ in range(1000):
        n = rng.randint(1, 8)
        g = random_graph(n, rng.random(), rng)
        f = random_pattern(rng, n + 1)
        checked += 1
        if contains_forest(g, f) != naive_injection_oracle(g, f):
            disagree.append((g, str(f)))
    return not disagree, f"{checked} pairs, {len(disagree)} disagreements {disagree[:3]}"


# ---- 7 ----------------------------------------------------------------------


def _random_subset(rng, n):
    return [v for v in range(n) if rng.random() < 0.5]


def universal_bounds():
    hong_bad, census = [], 0
    for n in range(1, 9):
        for g in enumerate_graphs(n):
            census += 1
            if hong_bound(g) < power_iteration(g).rho - 1e-9:
                hong_bad.append(g)
    rng = random.Random(7)
    eq_bad = []
    for i in range(10_000):
        n = rng.randint(1, 12)
        g = random_graph(n, rng.random(), rng)
        a, b = set(_random_subset(rng, n)), set(_random_subset(rng, n))
        eab = edges_between(g, a, b)
        both = a & b
        eq4 = eab == edges_between(g, a, b - a) + 2 * edges_inside(g, both) + edges_between(g, a - b, both)
        eq5 = eab <= edges_inside(g, a | b) + edges_inside(g, both) <= 2 * g.num_edges
        eq6 = eab <= len(a) * len(b)
        sets = [a, b] + [set(_random_subset(rng, n)) for _ in range(rng.randint(0, 3))]
        cap = set.intersection(*sets)
        cup = set.union(*sets)
        eq3 = len(cap) >= sum(len(s) for s in sets) - (len(sets) - 1) * len(cup)
        if not (eq3 and eq4 and eq5 and eq6):
            eq_bad.append(i)
    ok = not hong_bad and not eq_bad
    return ok, f"hong bound on {census} graphs ({len(hong_bad)} violations); set identities on 10^4 instances ({len(eq_bad)} violations)"


# ---- 8 ----------------------------------------------------------------------


def saturate(g: Graph, candidates, keep, rng, stop: float) -> Graph:
    """Add candidate edges in random order while ``keep`` holds, stopping early with probability ``stop``."""
    order = list(candidates)
    rng.shuffle(order)
    for u, v in order:
        if rng.random() < stop:
            break
        h = g.with_edge(u, v)
        if keep(h):
            g = h
    return g


def _bipartite_sample(rng, n, keep):
    a = rng.randint(1, n - 1)
    base = random_bipartite(a, n - a, 0.0, rng)
    pairs = [(u, v) for u in range(a) for v in range(a, n)]
    return saturate(base, pairs, keep, rng, rng.choice((0.0, 0.0, 0.01, 0.05)))


def bipartite_edge_bounds():
    rng = random.Random(31)
    path_bad = []
    for i in range(1000):
        l = (4, 5, 6)[i % 3]
        n = rng.randint(2, 20)
        g = _bipartite_sample(rng, n, lambda h: not has_path(h, l))
        if g.num_edges > (l // 2 - 1) * n:
            path_bad.append((l, g))
    k, l = 1, 4
    f = star_path(k, l)
    h = k + l // 2 - 1
    threshold = h * h - (h - 1) * l + l * l * k + l * l - l
    forest_bad = []
    for _ in range(1000):
        n = rng.randint(threshold, threshold + 4)
        g = _bipartite_sample(rng, n, lambda x: is_free(x, f))
        if g.num_edges > h * n:
            forest_bad.append(g)
    ok = not path_bad and not forest_bad
    return ok, (
        f"P_l-free: {len(path_bad)} violations; {f}-free with n >= {threshold}: {len(forest_bad)} violations"
    )


# ---- 9 ----------------------------------------------------------------------


def level_set_diagnostic():
    misses = []
    for k, l, h in ((1, 4, 2), (2, 4, 3), (1, 6, 3)):
        for n in range(150, 301, 50):
            g = fam.Split(n, h).build()
            ls = perron_level_sets(g, k, l)
            if len(ls.Rpp) != h:
                misses.append(f"|R''|={len(ls.Rpp)} for Split({n},{h}) (k,l)=({k},{l})")
            rep = structure_claims(g, k, l)
            if not (rep.A and rep.B and rep.C):
                misses.append(f"claims A/B/C for Split({n},{h})")
    for k, l in ((1, 5), (2, 5)):
        h = k + l // 2 - 1
        for n in range(150, 301, 50):
            rep = structure_claims(fam.SplitPlus(n, h).build(), k, l)
            if not rep.D:
                misses.append(f"claim D for SplitPlus({n},{h})")
    return not misses, "; ".join(misses) if misses else "all level sets and claims as expected"


# ---- 10 ---------------------------------------------------------------------


def _canonical_of(f) -> str:
    from spextral.search import canonical_graph6

    return canonical_graph6(f.build())


def matching_reading():
    r7 = _search("sp", 7, "2P2", 1)
    r9 = _search("sp", 9, "3P2", 1)
    star = _canonical_of(fam.Split(7, 1))
    k2 = _canonical_of(fam.Split(9, 2))
    ok = r7.certificates == [star] and r9.certificates == [k2]
    readings = {}
    for reading in ("printed", "matching"):
        hits = []
        for n, pattern, rep in ((7, "2P2", r7), (9, "3P2", r9)):
            try:
                pred = predicted_spectral_extremal(parse_pattern(pattern), n, matching_reading=reading)
                hits.append(sorted(_canonical_of(x) for x in pred.families) == rep.certificates)
            except Exception:
                hits.append(False)
        readings[reading] = all(hits)
    agreed = [k for k, v in readings.items() if v]
    return ok, f"certificates {r7.certificates} {r9.certificates}; readings matching the oracle: {agreed}"


# ---- 11 ---------------------------------------------------------------------


def determinism():
    queries = [("ex", n, "2S3") for n in ([8, 9, 10] if full_mode() else [8, 9])]
    queries += [("ex", n, "1S3") for n in range(5, 10)]
    queries += [("sp", 7, "2P2"), ("sp", 9, "3P2")]
    diff = []
    for kind, n, p in queries:
        one = _reports.get((kind, n, p, 1))
        if one is None:
            _search(kind, n, p, 1)
            one = _reports[(kind, n, p, 1)]
        _search(kind, n, p, 4)
        if _reports[(kind, n, p, 4)] != one:
            diff.append((kind, n, p))
    return not diff, f"{len(queries)} reports compared, differing: {diff}"


CRITERIA = (
    Criterion(1, "closed form vs power iteration", "formulas", 10, closed_form_vs_iteration),
    Criterion(2, "quotient exactness", "formulas", 30, quotient_exactness),
    Criterion(3, "Turan formula vs oracle", "oracles", 60, turan_vs_oracle),
    Criterion(4, "construction-formula identity", "formulas", 5, construction_identity),
    Criterion(5, "freeness of predicted families", "oracles", 60, predictions_are_free),
    Criterion(6, "containment oracle equivalence", "oracles", 120, oracle_equivalence),
    Criterion(7, "universal bounds", "spectral", 180, universal_bounds),
    Criterion(8, "bipartite edge bounds", "formulas", 120, bipartite_edge_bounds),
    Criterion(9, "level-set diagnostic", "spectral", 10, level_set_diagnostic),
    Criterion(10, "matching reading via spectral oracle", "oracles", 90, matching_reading),
    Criterion(11, "determinism across worker counts", "oracles", None, determinism),
)


def _budget(c: Criterion) -> float | None:
    if c.number == 3 and full_mode():
        return 15 * 60 + 60
    return c.budget


def run_one(c: Criterion) -> Outcome:
    start = time.perf_counter()
    try:
        ok, detail = c.check()
    except Exception as exc:  # a crash is a failure, reported like one
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    budget = _budget(c)
    if budget is not None and elapsed > budget:
        ok, detail = False, f"over time budget; {detail}"
    return Outcome(c.number, c.title, ok, detail, elapsed, budget)


def select(suite: str = "all") -> list[Criterion]:
    if suite == "all":
        return list(CRITERIA)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    return [c for c in CRITERIA if c.suite == suite]


def run(suite: str = "all", echo: Callable[[str], None] | None = print) -> list[Outcome]:
    out = []
    for c in select(suite):
        o = run_one(c)
        if echo:
            echo(o.line())
        out.append(o)
    return out
