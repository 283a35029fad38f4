#!/usr/bin/env python3
"""Survey word-metric ball growth for the provided groups.

Prints cumulative ball sizes and the log-log degree fit for the integer
lattices and the discrete Heisenberg group, side by side with the exact
lattice counts (2n+1)^d.
"""

import argparse

from torlicz import ball_sizes, growth_degree_estimate, heisenberg_group, integer_lattice


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=12)
    ap.add_argument("--dims", type=int, nargs="*", default=[1, 2, 3])
    args = ap.parse_args()

    groups = [integer_lattice(d) for d in args.dims] + [heisenberg_group()]
    for group in groups:
        sizes = ball_sizes(group, args.nmax)
        fit = growth_degree_estimate(sizes)
        print(f"{group.name}: degree ~ {fit.degree:.3f} (residual {fit.residual:.2e}, window n={fit.window[0]}..{fit.window[1]})")
        print(f"  sizes: {sizes}")
        if group.name.startswith("Z^d:"):
            d = int(group.name.split(":")[1])
            exact = [(2 * n + 1) ** d for n in range(1, args.nmax + 1)]
            print(f"  exact: {exact}  match={sizes == exact}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
