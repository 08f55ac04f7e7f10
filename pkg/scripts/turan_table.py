"""Exhaustive ex(n, F) next to the closed forms, for small n.

    python scripts/turan_table.py --patterns 2S3 1S3 1S3+1P4 --n-max 9
    python scripts/turan_table.py --patterns 2S3 --n-max 10 --allow-large --jobs 4

Columns: oracle value, second-oracle value, closed form (if catalogued), the
rough bound (k + floor(l/2) - 1/2)(n - 1) for star-path patterns, and the
certificates as graph6.
"""

import argparse
import time

from spextral.containment import parse_pattern
from spextral.errors import UnsupportedPattern
from spextral.search import brute_ex, default_jobs, maximal_free_count
from spextral.turan import classify, turan_for_pattern, upbound_star_path


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--patterns", nargs="+", default=["2S3", "1S3", "1S3+1P4", "1S4+1P5", "3P2", "2P3"])
    ap.add_argument("--n-min", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--jobs", type=int, default=default_jobs())
    ap.add_argument("--allow-large", action="store_true")
    ap.add_argument("--second-oracle", action="store_true", help="also run the branch-and-bound count")
    args = ap.parse_args()

    for text in args.patterns:
        f = parse_pattern(text)
        shapes = dict(classify(f))
        print(f"\n{f}")
        print(f"{'n':>3} {'ex':>4} {'bnb':>4} {'formula':>8} {'rough':>6} {'secs':>6}  certificates")
        for n in range(args.n_min, args.n_max + 1):
            t0 = time.perf_counter()
            rep = brute_ex(n, f, jobs=args.jobs, allow_large=args.allow_large)
            secs = time.perf_counter() - t0
            bnb = maximal_free_count(n, f) if args.second_oracle else "-"
            try:
                formula = turan_for_pattern(f, n)[0].value
            except (UnsupportedPattern, ValueError):
                formula = "-"
            rough = "-"
            if "star_path" in shapes:
                p = shapes["star_path"]
                rough = f"{float(upbound_star_path(n, p['k'], p['l'])):g}"
            certs = " ".join(rep.certificates[:4]) + (" ..." if len(rep.certificates) > 4 else "")
            print(f"{n:>3} {rep.best_value!s:>4} {bnb!s:>4} {formula!s:>8} {rough:>6} {secs:>6.1f}  {certs}")


if __name__ == "__main__":
    main()
