"""Scan n for the smallest order at which R'' shrinks to the hub clique.

For S_{n,h} the leaf/hub Perron ratio is h/rho, so R'' = hubs exactly when
h/rho < 1/(2(h+1)). This script reports, for each (k, l), where the
transition happens and prints |R''| on a grid of n.

    python scripts/level_set_scan.py --grid 100 150 180 200 300
"""

import argparse

from spextral.families import Split
from spextral.spectral import level_parameters, perron_level_sets, rho_split_closed


def transition(h: int, n_max: int = 10_000) -> int | None:
    for n in range(h + 1, n_max):
        if h / rho_split_closed(n, h) < 1 / (2 * (h + 1)):
            return n
    return None


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--pairs", nargs="+", default=["1,4", "2,4", "1,6", "1,5", "2,5"], help="k,l pairs")
    ap.add_argument("--grid", nargs="+", type=int, default=[100, 150, 180, 200, 250, 300])
    args = ap.parse_args()

    print(f"{'k':>2} {'l':>2} {'h':>2} {'first n':>8}  |R''| on grid {args.grid}")
    for pair in args.pairs:
        k, l = map(int, pair.split(","))
        h, _, _ = level_parameters(k, l)
        sizes = [len(perron_level_sets(Split(n, h).build(), k, l).Rpp) for n in args.grid]
        print(f"{k:>2} {l:>2} {h:>2} {transition(h)!s:>8}  {sizes}")


if __name__ == "__main__":
    main()
