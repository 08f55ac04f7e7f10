"""Closed-form Turán numbers and predicted (spectral) extremal families.

All values are exact integers (or Fractions for the half-integral bound).
A value is returned whether or not ``n`` meets the hypothesis of the result
it comes from; ``guaranteed`` says whether it does.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from spextral.containment import ForestPattern
from spextral.errors import UnsupportedPattern
from spextral.families import (
    CliqueJoinCliques,
    CliqueUnionIsolated,
    ExtremalFamily,
    LinearForestExtremal,
    Split,
    SplitPlus,
    describe,
)

# thresholds above 2**MAX_THRESHOLD_BITS are refused rather than computed
MAX_THRESHOLD_BITS = 4096


@dataclass(frozen=True)
class TuranValue:
    value: int
    case: str
    guaranteed: bool
    threshold: int


@dataclass(frozen=True)
class Prediction:
    families: tuple[ExtremalFamily, ...]
    threshold: int
    source: str
    guaranteed: bool
    note: str = ""
    shape: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "source": self.source,
            "threshold": self.threshold,
            "guaranteed": self.guaranteed,
            "families": [describe(f) for f in self.families],
            "note": self.note,
            "shape": self.shape,
        }


def _ceil_half(x: int) -> int:
    return -(-x // 2)


def turan_connected_path_bound(n: int, k: int) -> int:
    """Edge bound for connected graphs of order n with no path on k+1 vertices."""
    if not n > k >= 3:
        raise ValueError(f"need n > k >= 3, got n={n}, k={k}")
    c = _ceil_half(k + 1)
    return max(comb(k - 1, 2) + (n - k + 1), comb(c, 2) + (k - 1) // 2 * (n - c))


def turan_star_bound(n: int, l: int) -> int:
    """Upper bound on ex(n, S_l), attained by an (l-1)-regular graph."""
    if l < 3 or n < l + 1:
        raise ValueError(f"need l >= 3 and n >= l+1, got n={n}, l={l}")
    return (l - 1) * n // 2


def turan_star_forest(n: int, k: int, l: int) -> TuranValue:
    """ex(n, kS_l) for k >= 2, l >= 3 (valid for every n)."""
    if k < 2 or l < 3 or n < 1:
        raise ValueError(f"need k >= 2, l >= 3, n >= 1, got n={n}, k={k}, l={l}")
    big = k * l + k - 1
    if n < k * (l + 1):
        value, case = comb(n, 2), "n<k(l+1)"
    elif n <= (k + 1) * l + k - 1:
        value, case = comb(big, 2) + comb(n - big, 2), "k(l+1)<=n<=(k+1)l+k-1"
    elif 2 * n < k * l * l + 2 * k * l + 2 * k - 2:
        value = comb(big, 2) + (l - 1) * (n - big) // 2
        case = "(k+1)l+k<=n<(kl^2+2kl+2k-2)/2"
    else:
        value = comb(k - 1, 2) + (n - k + 1) * (k - 1) + (l - 1) * (n - k + 1) // 2
        case = "n>=(kl^2+2kl+2k-2)/2"
    return TuranValue(value, case, True, 1)


def star_path_threshold(k: int, l: int) -> int:
    return (l * l - l + 1) * k + (l * l + 3 * l - 2) // 2


def turan_star_path(n: int, k: int, l: int) -> tuple[TuranValue, Prediction]:
    """ex(n, kS_{l-1} ∪ P_l) and its extremal graphs, for k >= 1, l >= 4."""
    if k < 1 or l < 4 or n < k:
        raise ValueError(f"need k >= 1, l >= 4, n >= k, got n={n}, k={k}, l={l}")
    r = (n - k) % (l - 1)
    twice = (2 * k + l - 2) * n - (k * k + (l - 1) * (k + r) - r * r)
    assert twice % 2 == 0
    threshold = star_path_threshold(k, l)
    guaranteed = n >= threshold
    families: list[ExtremalFamily] = [CliqueJoinCliques(n, k, l, r)]
    if l % 2 == 0 and r in (l // 2, (l - 2) // 2):
        families.append(Split(n, k + l // 2 - 1))
    value = TuranValue(twice // 2, f"r={r}", guaranteed, threshold)
    pred = Prediction(tuple(families), threshold, "ex:kS_{l-1}+P_l", guaranteed, shape={"k": k, "l": l})
    return value, pred


def upbound_star_path(n: int, k: int, l: int) -> Fraction:
    """(k + floor(l/2) - 1/2)(n - 1)."""
    if k < 0 or l < 4 or n < 1:
        raise ValueError(f"need k >= 0, l >= 4, n >= 1, got n={n}, k={k}, l={l}")
    return (k + l // 2 - Fraction(1, 2)) * (n - 1)


def _check_size(x: int) -> int:
    if x.bit_length() > MAX_THRESHOLD_BITS:
        raise OverflowError(f"threshold exceeds 2**{MAX_THRESHOLD_BITS}")
    return x


def spectral_transfer_threshold(p: int, m: int) -> int:
    """max{2^(4p), m^2}: from here on the spectral and edge extremal graphs agree."""
    if p < 1 or m < 1:
        raise ValueError(f"need p >= 1 and m >= 1, got p={p}, m={m}")
    if 4 * p > MAX_THRESHOLD_BITS:
        raise OverflowError(f"2**{4 * p} exceeds 2**{MAX_THRESHOLD_BITS}")
    return _check_size(max(2 ** (4 * p), m * m))


def star_path_spectral_threshold(k: int, l: int) -> int:
    """8(k + floor(l/2))^3 t^8."""
    t = star_path_threshold(k, l)
    return _check_size(8 * (k + l // 2) ** 3 * t**8)


# ---- pattern shapes -------------------------------------------------------


def classify(f: ForestPattern) -> list[tuple[str, dict]]:
    """All catalogued shapes the normalised pattern matches."""
    shapes = []
    stars, paths = Counter(f.stars), Counter(f.paths)
    if len(stars) == 1 and len(paths) == 1:
        (s, k), (p, c) = next(iter(stars.items())), next(iter(paths.items()))
        if c == 1 and s == p - 1 and p >= 4:
            shapes.append(("star_path", {"k": k, "l": p}))
        if c >= 2 and p % 2 == 0 and s == p - 1 and p >= 4:
            shapes.append(("double_star_path", {"k1": k, "k2": c, "l": p // 2}))
        if s == 4 and p == 5 and c == 2:
            shapes.append(("s4_2p5", {"k": k}))
    if not stars and len(paths) == 1:
        (p, c) = next(iter(paths.items()))
        if p == 2:
            shapes.append(("matching", {"k": c}))
        if p == 3 and c >= 2:
            shapes.append(("kP3", {"k": c}))
    return shapes


def _matching_families(n: int, k: int) -> list[ExtremalFamily]:
    if n in (2 * k, 2 * k + 1):
        return [Split(n, n)]
    if 2 * k + 2 <= n < 3 * k + 2:
        return [CliqueUnionIsolated(n, 2 * k + 1)]
    if n == 3 * k + 2:
        return [CliqueUnionIsolated(n, 2 * k + 1), Split(n, k)]
    return [Split(n, k)]


def predicted_spectral_extremal(f: ForestPattern, n: int, matching_reading: str = "printed") -> Prediction:
    """The graphs the literature says maximise rho among f-free graphs of order n.

    For mP_2 the classical statement is phrased with "kP_2"; taken literally
    (``matching_reading="printed"``) its graphs contain kP_2 themselves. With
    ``matching_reading="matching"`` the statement is read as "matching number
    at most k", i.e. the forbidden pattern is (k+1)P_2.
    """
    shapes = classify(f)
    if not shapes:
        raise UnsupportedPattern(f"no spectral extremal result is catalogued for {f}")
    if len(shapes) > 1:
        raise UnsupportedPattern(f"pattern {f} matches several shapes: {[s for s, _ in shapes]}")
    kind, p = shapes[0]

    if kind == "star_path":
        k, l = p["k"], p["l"]
        thr = star_path_spectral_threshold(k, l)
        if l % 2 == 0:
            fam = [Split(n, (2 * k + l - 2) // 2)]
        else:
            fam = [SplitPlus(n, (2 * k + l - 3) // 2)]
        return Prediction(tuple(fam), thr, "spex:kS_{l-1}+P_l", n >= thr, shape={"kind": kind, **p})

    if kind == "double_star_path":
        k1, k2, l = p["k1"], p["k2"], p["l"]
        m = (4 * l * l - 2 * l + 1) * k1 + (2 * l * l + 3 * l - 4) * k2 + 3
        thr = spectral_transfer_threshold(k1 + l * k2 - 1, m)
        fam = [Split(n, k1 + l * k2 - 1)]
        return Prediction(tuple(fam), thr, "spex:k1S_{2l-1}+k2P_{2l}", n >= thr, shape={"kind": kind, **p})

    if kind == "s4_2p5":
        k = p["k"]
        thr = spectral_transfer_threshold(k + 3, 21 * k + 38)
        return Prediction((SplitPlus(n, k + 3),), thr, "spex:kS_4+2P_5", n >= thr, shape={"kind": kind, **p})

    if kind == "kP3":
        k = p["k"]
        thr = 8 * k * k - 3 * k
        return Prediction((LinearForestExtremal(n, k),), thr, "spex:kP_3", n >= thr, shape={"kind": kind, **p})

    # matching
    m = p["k"]
    if matching_reading == "printed":
        k = m
        note = (
            "statement taken as printed: forbidding kP_2 with k = %d; the listed graphs "
            "contain kP_2 themselves, so this reading is internally inconsistent" % k
        )
    elif matching_reading == "matching":
        k = m - 1
        note = "read as matching number at most k = %d, i.e. forbidding (k+1)P_2 = %dP_2" % (k, m)
    else:
        raise ValueError(f"unknown matching reading {matching_reading!r}")
    if k < 1:
        raise UnsupportedPattern(f"the matching result needs k >= 1 under the {matching_reading} reading")
    if n < 2 * k:
        raise ValueError(f"the matching result needs n >= 2k = {2 * k}, got n={n}")
    fam = _matching_families(n, k)
    return Prediction(tuple(fam), 2 * k, f"spex:kP_2[{matching_reading}]", True, note, {"kind": kind, "k": k})


def turan_for_pattern(f: ForestPattern, n: int) -> tuple[TuranValue, Prediction | None]:
    """Dispatch a pattern to the Turán result that covers it."""
    stars, paths = Counter(f.stars), Counter(f.paths)
    if not paths and len(stars) == 1:
        (l, k), = stars.items()
        if k >= 2:
            return turan_star_forest(n, k, l), None
        v = turan_star_bound(n, l)
        return TuranValue(v, "upper bound floor((l-1)n/2)", True, l + 1), None
    shapes = dict(classify(f))
    if "star_path" in shapes:
        return turan_star_path(n, shapes["star_path"]["k"], shapes["star_path"]["l"])
    if not stars and len(paths) == 1 and paths[max(paths)] == 1 and max(paths) >= 4:
        k = max(paths) - 1
        v = turan_connected_path_bound(n, k)
        return TuranValue(v, "connected graphs, upper bound", True, k + 1), None
    raise UnsupportedPattern(f"no Turán formula is catalogued for {f}")
