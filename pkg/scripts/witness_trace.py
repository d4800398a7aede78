"""Print the inequality chain behind delta < sigma_min for one generated polytope.

Usage: python3 scripts/witness_trace.py --family slab --dim 2 --epsilon 0.01
"""

import argparse

from polyround.generators import Family, GeneratorSpec, generate
from polyround.roundness import extract_witness


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default="cube", choices=[f.value for f in Family])
    ap.add_argument("--dim", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--m", type=int)
    ap.add_argument("--epsilon", type=float, default=1e-3)
    args = ap.parse_args()

    spec = GeneratorSpec(args.family, args.dim, seed=args.seed, m=args.m, epsilon=args.epsilon)
    w = extract_witness(generate(spec))
    print(spec.label)
    print(f"  v_d         = {w.v_d}")
    print(f"  lambda1/2   = {w.lambda1:.6g} / {w.lambda2:.6g}   (facets {w.facet_i}, {w.facet_j})")
    print(f"  sigma|f-g|  = {w.lhs_chain:.6g}")
    print(f"  b_i(1+|r|)  = {w.mid_chain:.6g}")
    print(f"  b_i         = {w.rhs_chain:.6g}")
    print(f"  delta       = {w.inradius / w.diameter:.6g} < sigma_min = {w.sigma_min:.6g}")
    for c in w.checks:
        print(f"  {'PASS' if c.passed else 'FAIL'} {c.name}")


if __name__ == "__main__":
    main()
