"""Vertex and edge counts of the q=2 gadgets, with their verified cost profile."""
import argparse
import csv
import sys

from hubsolve.gadgets import (all_relations, build_one_realizer, build_relation,
                              verify_realization)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-r", type=int, default=2, choices=(1, 2, 3))
    args = ap.parse_args()
    out = csv.writer(sys.stdout)
    out.writerow(["r", "relation", "kind", "vertices", "edges", "k", "omega"])
    for r in range(1, args.max_r + 1):
        for R in all_relations(r):
            tag = " ".join("".join(map(str, t)) for t in sorted(R.tuples)) or "-"
            for kind, gad in (("relation", build_relation(R)), ("one", build_one_realizer(R))):
                rz = verify_realization(gad, R)
                out.writerow([r, tag, kind, gad.n, len(gad.edges), rz.k, rz.omega])


if __name__ == "__main__":
    main()
