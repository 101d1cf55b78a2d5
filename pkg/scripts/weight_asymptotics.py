"""Convergence of w'_k / k^n towards (n+1) int_P c.x - mu_max Vol(P)."""

import argparse
from fractions import Fraction

from toricke import catalog
from toricke.lattice import boundary_weight_series, inttheta_target, verify_inttheta_asymptotics


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("name", nargs="?", default="BlP2")
    parser.add_argument("--c", default="1,0")
    parser.add_argument("--kmax", type=int, default=40)
    args = parser.parse_args()

    P = catalog.get(args.name)
    c = tuple(Fraction(x) for x in args.c.split(","))
    s = boundary_weight_series(P, c, args.kmax)
    target = inttheta_target(P, c, s.mu_max)
    print(f"# {P.name} c={args.c} mu_max={s.mu_max} target={target}")
    print("k\tw'_k\tw'_k/k^n\tk*gap")
    for k in range(1, args.kmax + 1):
        ratio = s.w_prime(k) / Fraction(k) ** P.dim
        print(f"{k}\t{s.w_prime(k)}\t{float(ratio):.6f}\t{float(k * abs(ratio - target)):.4f}")
    fit = verify_inttheta_asymptotics(P, c, args.kmax, series=s)
    print(f"# fit on k in {list(fit.k_range)}: A = {fit.leading:.6f}, rel gap {fit.rel_gap:.2e}")


if __name__ == "__main__":
    main()
