"""Wall time of the hub dominating-set solver as the hub grows."""
import argparse
import csv
import random
import sys
import time

from hubsolve.domset import solve_domset_hub
from hubsolve.generators import random_hubbed_graph


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--max-p", type=int, default=10)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = csv.writer(sys.stdout)
    out.writerow(["p", "n", "mean_seconds", "mean_size"])
    for p in range(1, args.max_p + 1):
        secs = size = 0.0
        n = 3 * p
        for _ in range(args.trials):
            g, h = random_hubbed_graph(rng, n, p)
            t = time.perf_counter()
            size += solve_domset_hub(g, h).size
            secs += time.perf_counter() - t
        out.writerow([p, n, f"{secs / args.trials:.4f}", size / args.trials])


if __name__ == "__main__":
    main()
