"""Sweep t across [0, 1] and report the minimum twisted Futaki value over random directions.

The minimum stays nonnegative up to R(M) and turns negative right after it.
"""

import argparse
from fractions import Fraction

import numpy as np

from toricke import catalog
from toricke.stability import greatest_ricci_lower_bound, twisted_futaki


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("name", nargs="?", default="BlP2")
    parser.add_argument("--directions", type=int, default=2000)
    parser.add_argument("--steps", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    P = catalog.get(args.name)
    rep = greatest_ricci_lower_bound(P)
    rng = np.random.default_rng(args.seed)
    dirs = rng.normal(size=(args.directions, P.dim))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    dirs = [tuple(Fraction(float(x)) for x in d) for d in dirs]
    if rep.destabilizer is not None:
        dirs.append(rep.destabilizer)

    print(f"# {P.name}: R = {rep.R} ({float(rep.R):.6f})")
    print("t\tmin_c Fut_t(c)\tsign")
    ts = sorted({Fraction(i, args.steps) for i in range(args.steps + 1)} | {rep.R})
    for t in ts:
        m = min(twisted_futaki(P, t, c) for c in dirs)
        print(f"{float(t):.4f}\t{float(m):+.6f}\t{'>=0' if m >= 0 else '<0'}")


if __name__ == "__main__":
    main()
