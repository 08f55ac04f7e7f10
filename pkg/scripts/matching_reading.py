"""Which reading of the kP_2 spectral result does exhaustive search support?

For each n and m, compute the F-free graphs of maximum spectral radius with
F = mP_2 and compare them with the families predicted under the printed
reading (k = m) and the matching-number reading (k = m - 1).

    python scripts/matching_reading.py --n-max 9
"""

import argparse

from spextral.containment import ForestPattern
from spextral.errors import UnsupportedPattern
from spextral.search import brute_ex_sp, canonical_graph6
from spextral.turan import predicted_spectral_extremal


def predicted(f, n, reading):
    try:
        p = predicted_spectral_extremal(f, n, matching_reading=reading)
    except (UnsupportedPattern, ValueError):
        return None
    return sorted(canonical_graph6(x.build()) for x in p.families)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n-min", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--m-max", type=int, default=3)
    args = ap.parse_args()

    print(f"{'n':>3} {'m':>2} {'rho':>10} {'printed':>8} {'matching':>9}  certificates")
    for m in range(2, args.m_max + 1):
        f = ForestPattern(paths=(2,) * m)
        for n in range(max(args.n_min, 2 * m - 2), args.n_max + 1):
            rep = brute_ex_sp(n, f)
            marks = []
            for reading in ("printed", "matching"):
                pred = predicted(f, n, reading)
                marks.append("n/a" if pred is None else ("yes" if pred == rep.certificates else "no"))
            print(f"{n:>3} {m:>2} {rep.best_value:>10.6f} {marks[0]:>8} {marks[1]:>9}  {' '.join(rep.certificates)}")


if __name__ == "__main__":
    main()
