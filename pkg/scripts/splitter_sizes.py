"""Member counts of the exhaustive and Monte Carlo splitter backends."""
import argparse
import csv
import sys

from hubsolve.errors import ParamsTooLarge
from hubsolve.triangles import balanced_probability, build_splitter


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-n", type=int, default=14)
    args = ap.parse_args()
    out = csv.writer(sys.stdout)
    out.writerow(["N", "p", "ell", "balance_prob", "exhaustive", "mc_reps"])
    for N in range(4, args.max_n + 1, 2):
        for p in (2, 3, 4, 5):
            for ell in sorted({1, 2, p}):
                if p > N:
                    continue
                try:
                    ex = len(build_splitter(N, p, ell, seed=args.seed))
                except ParamsTooLarge:
                    ex = ""
                mc = build_splitter(N, p, ell, backend="mc", seed=args.seed).reps
                out.writerow([N, p, ell, f"{balanced_probability(p, ell):.4f}", ex, mc])


if __name__ == "__main__":
    main()
