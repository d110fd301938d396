#!/usr/bin/env python3
"""Measure how the lift-driven HN pipeline scales with the cycle length.

Builds the same summand template (one wrapped interval winding three
times plus a size-2 Jordan cell, conjugated) at each requested n over
GF(3) and times barcode + HN extraction on the default window, printing
the step-to-step runtime ratios.  Vertex dimensions stay fixed, so the
expected growth is linear in n.
"""

import argparse
import random
import time

from hnzz.affine import AffineQuiver, eta_from_lift, indec_N, indec_T
from hnzz.generators import random_orientation
from hnzz.linalg import GF, random_invertible_rng
from hnzz.quiver import conjugate, direct_sum


def instance(n: int, seed: int):
    rng = random.Random(seed)
    aq = AffineQuiver(n, random_orientation(n, rng))
    fld = GF(3)
    rep = direct_sum(indec_N(aq, 1, 1 + 3 * n + 2, fld), indec_T(aq, 1, 2, fld))
    bases = [random_invertible_rng(d, fld, rng) for d in rep.dims]
    return conjugate(rep, bases)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[25, 50, 100, 200])
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    prev = None
    for n in args.sizes:
        rep = instance(n, args.seed)
        best = float("inf")
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            eta_from_lift(rep)
            best = min(best, time.perf_counter() - t0)
        line = f"n={n:5d}  window={(rep.dims[0] + 2) * n:6d}  best={best:8.3f}s"
        if prev is not None:
            line += f"  ratio={best / prev:5.2f}"
        print(line)
        prev = best


if __name__ == "__main__":
    main()
