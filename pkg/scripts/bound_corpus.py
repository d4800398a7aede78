"""Summarize delta, sigma_min and the margin between them over the standard corpus.

Usage: python3 scripts/bound_corpus.py [--csv out.csv]
"""

import argparse
import csv
import time
from collections import defaultdict

import numpy as np

from polyround.generators import corpus
from polyround.roundness import analyze


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--csv", help="write one row per instance")
    args = ap.parse_args()

    t0 = time.perf_counter()
    entries = corpus()
    rows = []
    for e in entries:
        rep = analyze(e.polytope)
        rows.append((e.spec.label, e.spec.family.value, e.spec.dim, rep.delta, rep.sigma_min, rep.bound_margin))
    elapsed = time.perf_counter() - t0

    groups = defaultdict(list)
    for row in rows:
        groups[(row[1], row[2])].append(row)
    print(f"{'family':<18} {'d':>2} {'n':>4} {'max delta':>11} {'min sigma':>11} {'min margin':>11}")
    for (fam, d), rs in sorted(groups.items()):
        arr = np.array([r[3:] for r in rs])
        print(f"{fam:<18} {d:>2} {len(rs):>4} {arr[:, 0].max():>11.5f} {arr[:, 1].min():>11.5f} {arr[:, 2].min():>11.5f}")
    margins = np.array([r[5] for r in rows])
    print(f"\n{len(rows)} instances in {elapsed:.1f}s; min margin {margins.min():.6g}; violations {(margins <= 0).sum()}")

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["label", "family", "dim", "delta", "sigma_min", "margin"])
            w.writerows(rows)


if __name__ == "__main__":
    main()
