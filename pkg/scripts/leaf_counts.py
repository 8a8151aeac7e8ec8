"""Leaf counts of the list-coloring and wildcard branchings against their bounds.

Prints one CSV row per (q, p) with the worst observed count over random
hubbed graphs.
"""
import argparse
import csv
import random
import sys
from math import ceil

from hubsolve.coloring import list_coloring_search
from hubsolve.generators import random_hubbed_graph, random_lists
from hubsolve.wildcard import solve_coloring_vd_fast


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--trials", type=int, default=30)
    ap.add_argument("--max-p", type=int, default=6)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = csv.writer(sys.stdout)
    out.writerow(["q", "p", "delta", "lc_worst", "lc_bound", "wc_worst", "wc_bound"])
    for q in (2, 3):
        for p in range(1, args.max_p + 1):
            lc = wc = 0
            delta = 2
            for _ in range(args.trials):
                g, h = random_hubbed_graph(rng, p + rng.randint(2, 8), p, sigma=3, delta=delta)
                L = random_lists(rng, g.n, q)
                lc = max(lc, list_coloring_search(g, L, h)[1])
                wc = max(wc, solve_coloring_vd_fast(g, L, h).leaves)
            d = max(delta, 1)
            out.writerow([q, p, d, lc, (q ** d - 1) ** ceil(p / d),
                          wc, ((q + 1) ** d - 1) ** ceil(p / d)])


if __name__ == "__main__":
    main()
