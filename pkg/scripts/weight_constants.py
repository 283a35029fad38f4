#!/usr/bin/env python3
"""Radius sweep of empirical weight constants on Z.

For each weight the table shows the ball maximum of w(st)/(w(s)w(t))
(submultiplicativity) or w(st)/(w(s)+w(t)) (weak subadditivity) as the
radius grows.  Two behaviours are visible:

  * quotients like subexp2(1,1)/poly(1) stabilize almost immediately: the
    maximizing pair sits near the identity and stops moving;
  * quotients like subexp(0.5,1)/poly(25) are boundary-dominated: the
    maximizing pair is antipodal (r, -r), and the constant keeps growing
    until the radius passes the crossover near (2*beta/C)^2 = 2500, far
    beyond desk-scale balls.

The second behaviour is why a radius-30 stability gate on that family
cannot pass.  Run with --wide to watch the constant level off at the
crossover; the wide sweep uses the closed-form word length |n| on Z and
row-chunked maxima so it stays cheap.
"""

import argparse
import math

import numpy as np

from torlicz import (
    check_submultiplicative,
    check_weak_subadditive,
    integer_lattice,
    parse_weight,
)


def wide_submult_on_z(log_weight_of_tau, radius: int) -> float:
    """max over |s|,|t| <= radius of w(s+t)/(w(s)w(t)) in log arithmetic."""
    taus = np.arange(0, 2 * radius + 1)
    h = log_weight_of_tau(taus)  # h[m] = ln w at tau = m
    ns = np.arange(-radius, radius + 1)
    hn = h[np.abs(ns)]
    best = -np.inf
    for i, s in enumerate(ns):
        hst = h[np.abs(s + ns)]
        best = max(best, float(np.max(hst - hn[i] - hn)))
    return math.exp(best)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--radii", type=int, nargs="*", default=[10, 20, 30, 60, 120])
    ap.add_argument("--wide", action="store_true", help="extend the subexp/poly sweep past its crossover")
    args = ap.parse_args()

    z = integer_lattice(1)
    weights = [
        ("poly:2", "weak-subadd"),
        ("subexp:0.5:1", "submult"),
        ("quot:subexp2:1:1/poly:1", "submult"),
        ("quot:subexp:0.5:1/poly:25", "submult"),
    ]
    for spec, mode in weights:
        w = parse_weight(z, spec)
        print(f"{spec} ({mode}):")
        prev = None
        for r in args.radii:
            rep = (
                check_submultiplicative(w, r)
                if mode == "submult"
                else check_weak_subadditive(w, r)
            )
            growth = "" if prev is None else f"  x{rep.constant / prev:.3g} vs previous"
            prev = rep.constant
            print(f"  r={r:5d}  K={rep.constant:.6g}  witness={rep.witness}{growth}")
        print()

    if args.wide:
        print("wide sweep of quot:subexp:0.5:1/poly:25 (closed-form tau on Z):")
        lw = lambda t: np.sqrt(t) - 25.0 * np.log1p(t)
        prev = None
        for r in (300, 1200, 2600, 3000, 4000):
            k = wide_submult_on_z(lw, r)
            growth = "" if prev is None else f"  x{k / prev:.6g} vs previous"
            prev = k
            print(f"  r={r:5d}  K={k:.6g}{growth}")
        print("  (the constant freezes once the radius passes the interior minimum of the quotient)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
