"""Print KE status, R(M), critical facet and soliton vector for every catalog polytope."""

import argparse

from toricke import catalog
from toricke.cli import analyze, fmt_float, fmt_rational


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tol", type=float, default=1e-10)
    args = parser.parse_args()

    header = f"{'name':<10} {'vol':>6} {'KE':>5} {'R':>7} {'facet':>6}  soliton"
    print(header)
    print("-" * len(header))
    for P in catalog.all_polytopes():
        r = analyze(P, args.tol)
        facet = "-" if r.critical_facet is None else str(list(P.facets[r.critical_facet]))
        sol = ", ".join(fmt_float(round(x, 10) + 0.0) for x in r.soliton_vector)
        print(f"{r.name:<10} {fmt_rational(r.volume):>6} {str(r.is_KE):>5} "
              f"{fmt_rational(r.R):>7} {facet:>6}  ({sol})")


if __name__ == "__main__":
    main()
