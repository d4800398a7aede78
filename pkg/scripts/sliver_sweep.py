"""Track delta and sigma_min as a triangle's apex drops toward its base.

Both quantities shrink linearly with the apex height: the two slanted normals
become nearly antiparallel, so sigma_min collapses along with delta and their
ratio settles near a constant.
"""

import numpy as np

from polyround.polytope import from_simplex
from polyround.roundness import analyze


def main():
    print(f"{'height':>9} {'delta':>12} {'sigma_min':>10} {'1/delta':>10} {'ratio':>7}")
    for h in np.logspace(0, -4, 9):
        rep = analyze(from_simplex(np.array([[0.0, 0.0], [1.0, 0.0], [0.5, h]])))
        print(f"{h:>9.1e} {rep.delta:>12.5e} {rep.sigma_min:>10.5f} {rep.inverse_delta:>10.1f} {rep.delta / rep.sigma_min:>7.4f}")


if __name__ == "__main__":
    main()
