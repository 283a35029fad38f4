"""Young functions, numerical convex conjugation, and classification checks.

A Young function is a convex Phi: [0, inf) -> [0, inf] with Phi(0) = 0 and
Phi(x) -> inf.  The value +inf is an honest member of the arithmetic here:
the complementary function of Phi(x) = x is 0 on [0, 1] and +inf beyond,
and norms downstream treat an infinite modular as "greater than one".

The complementary (conjugate) function

    Psi(y) = sup { x y - Phi(x) : x >= 0 }

is computed numerically by bracketing the concave objective on a geometric
grid and refining with golden section.  Unboundedness is detected by
sustained growth past a bracket cap; in that case the returned value is the
+inf marker.  Pairs whose complement has a closed form carry it analytically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numeric import (
    coshm1,
    entropy_fn,
    expm1mx,
    golden_section_max,
    xlog1p,
)

CONJUGATE_BRACKET_CAP = 1.0e6


class YoungFunctionError(ValueError):
    """A candidate eval failed the Young-function sanity checks."""


@dataclass(frozen=True, eq=False)
class YoungFunction:
    """A Young function given by a scalar eval.

    ``finite_valued`` records whether the function is real-valued on all of
    [0, inf); functions that jump to +inf (like the complement of x) carry
    False.  Evals may return math.inf, never NaN.
    """

    name: str
    fn: object
    finite_valued: bool = True

    def __call__(self, x: float) -> float:
        return self.fn(x)


def _validate_young(fn, name: str, samples: int = 24) -> None:
    v0 = fn(0.0)
    if v0 != 0.0:
        raise YoungFunctionError(f"{name}: eval(0) = {v0!r}, expected 0")
    rng = np.random.default_rng(0xA11CE)
    xs = np.sort(np.exp(rng.uniform(math.log(1e-4), math.log(1e3), size=samples)))
    vals = [fn(float(x)) for x in xs]
    for v in vals:
        if isinstance(v, float) and math.isnan(v):
            raise YoungFunctionError(f"{name}: eval returned NaN")
    for a, b in zip(vals, vals[1:]):
        if b < a:
            raise YoungFunctionError(f"{name}: eval is not nondecreasing")
    # midpoint convexity on finite triples
    for x, z in zip(xs, xs[2:]):
        mid = 0.5 * (x + z)
        fm, fx, fz = fn(float(mid)), fn(float(x)), fn(float(z))
        if math.isinf(fx) or math.isinf(fz):
            continue
        if fm > 0.5 * (fx + fz) + 1e-9 * (1.0 + abs(fx) + abs(fz)):
            raise YoungFunctionError(f"{name}: midpoint convexity fails near x = {mid:g}")


def young_function(name: str, fn, finite_valued: bool = True, validate: bool = True) -> YoungFunction:
    if validate:
        _validate_young(fn, name)
    return YoungFunction(name=name, fn=fn, finite_valued=finite_valued)


# ---------------------------------------------------------------------------
# Numerical conjugation


def conjugate(phi: YoungFunction, y: float, bracket_cap: float = CONJUGATE_BRACKET_CAP) -> float:
    """sup over x >= 0 of x*y - Phi(x); +inf when the objective keeps
    growing past the bracket cap.

    The objective is concave (Phi convex), so a geometric scan localizes the
    maximizer and golden section refines it.  The returned value never
    exceeds the true supremum.
    """
    if math.isnan(y):
        raise ValueError("conjugate: y is NaN")
    if y < 0:
        raise ValueError("conjugate: y must be >= 0")
    if y == 0.0:
        return 0.0

    def objective(x: float) -> float:
        v = phi(x)
        if math.isinf(v):
            return -math.inf
        return x * y - v

    grid = [0.0] + [2.0**j for j in range(-40, 22)]
    vals = [objective(x) for x in grid]
    j = max(range(len(grid)), key=lambda i: vals[i])
    if grid[j] >= bracket_cap and vals[-1] > vals[-2] > vals[-3]:
        return math.inf
    lo = grid[max(0, j - 1)]
    hi = grid[min(len(grid) - 1, j + 1)]
    x, v = golden_section_max(objective, lo, hi)
    best = max(vals[j], v, 0.0)
    return best


def conjugate_function(phi: YoungFunction, name: str | None = None) -> YoungFunction:
    """The numeric complementary function as a memoized YoungFunction."""
    memo: dict[float, float] = {}

    def fn(y: float) -> float:
        v = memo.get(y)
        if v is None:
            v = conjugate(phi, y)
            memo[y] = v
        return v

    finite = all(math.isfinite(fn(float(y))) for y in (0.5, 1.0, 4.0, 32.0))
    return YoungFunction(
        name=name or f"conj({phi.name})", fn=fn, finite_valued=finite
    )


# ---------------------------------------------------------------------------
# Built-in complementary pairs


@dataclass(frozen=True, eq=False)
class YoungPair:
    """A complementary pair (Phi, Psi); Psi is analytic when a closed form
    exists, otherwise the numeric conjugate of Phi."""

    name: str
    phi: YoungFunction
    psi: YoungFunction
    analytic_complement: bool = True


def _psisonsuz(y: float) -> float:
    return 0.0 if y <= 1.0 else math.inf


def lp_pair(p: float) -> YoungPair:
    if not p > 1.0:
        raise ValueError("Lp pair needs p > 1")
    q = p / (p - 1.0)
    phi = young_function(f"x^{p:g}/{p:g}", lambda x: x**p / p)
    psi = young_function(f"y^{q:g}/{q:g}", lambda y: y**q / q)
    return YoungPair(name=f"Lp:{p:g}", phi=phi, psi=psi)


def l1_pair() -> YoungPair:
    phi = young_function("x", lambda x: x)
    psi = YoungFunction(name="0 on [0,1], inf beyond", fn=_psisonsuz, finite_valued=False)
    return YoungPair(name="L1", phi=phi, psi=psi)


def xlog_pair() -> YoungPair:
    phi = young_function("x ln(1+x)", xlog1p)
    return YoungPair(name="xlog", phi=phi, psi=conjugate_function(phi), analytic_complement=False)


def cosh_pair() -> YoungPair:
    phi = young_function("cosh x - 1", coshm1)
    return YoungPair(name="cosh", phi=phi, psi=conjugate_function(phi), analytic_complement=False)


def expm_pair() -> YoungPair:
    phi = young_function("e^x - x - 1", expm1mx)
    psi = young_function("(1+y)ln(1+y) - y", entropy_fn)
    return YoungPair(name="expm", phi=phi, psi=psi)


def entropy_pair() -> YoungPair:
    phi = young_function("(1+x)ln(1+x) - x", entropy_fn)
    psi = young_function("e^y - y - 1", expm1mx)
    return YoungPair(name="entropy", phi=phi, psi=psi)


BUILTIN_PAIR_NAMES = ("L1", "Lp:{p}", "xlog", "cosh", "expm", "entropy")


def parse_pair(spec: str) -> YoungPair:
    """Pair spec strings: ``Lp:{p}``, ``L1``, ``xlog``, ``cosh``, ``expm``,
    ``entropy``, or ``pw:{path}`` for a custom piecewise-linear table in a
    JSON file (a list of [x, y] breakpoints, optionally under a "points"
    key); the complement of a table is always the numeric conjugate."""
    spec = spec.strip()
    if spec == "L1":
        return l1_pair()
    if spec.startswith("Lp:"):
        return lp_pair(float(spec.split(":", 1)[1]))
    if spec.startswith("pw:"):
        import json

        path = spec.split(":", 1)[1]
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        points = doc["points"] if isinstance(doc, dict) else doc
        name = doc.get("name", "piecewise") if isinstance(doc, dict) else "piecewise"
        phi = piecewise_linear_young(points, name=name)
        return YoungPair(name=name, phi=phi, psi=conjugate_function(phi), analytic_complement=False)
    table = {"xlog": xlog_pair, "cosh": cosh_pair, "expm": expm_pair, "entropy": entropy_pair}
    if spec in table:
        return table[spec]()
    raise ValueError(f"unknown Young pair spec {spec!r}")


def builtin_pairs(lp_exponents=(1.5, 2.0, 3.0)) -> list[YoungPair]:
    pairs = [l1_pair()] + [lp_pair(p) for p in lp_exponents]
    pairs += [xlog_pair(), cosh_pair(), expm_pair(), entropy_pair()]
    return pairs


# ---------------------------------------------------------------------------
# Custom piecewise-linear Young functions (JSON tables)


def piecewise_linear_young(points, name: str = "piecewise") -> YoungFunction:
    """Young function from a sorted breakpoint table [(x0, y0), ...].

    The table must start at (0, 0), have nondecreasing slopes (convexity),
    and a positive final slope; evaluation extrapolates with the last slope.
    """
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 2:
        raise YoungFunctionError("piecewise table needs at least 2 breakpoints")
    if pts[0] != (0.0, 0.0):
        raise YoungFunctionError("piecewise table must start at (0, 0)")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise YoungFunctionError("piecewise breakpoints must be strictly increasing")
    slopes = [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]
    if any(s < 0 for s in slopes) or any(b < a - 1e-12 for a, b in zip(slopes, slopes[1:])):
        raise YoungFunctionError("piecewise table is not convex nondecreasing")
    if slopes[-1] <= 0:
        raise YoungFunctionError("final slope must be positive so that eval -> inf")
    xa = np.asarray(xs)
    ya = np.asarray(ys)
    last_x, last_y, last_s = xs[-1], ys[-1], slopes[-1]

    def fn(x: float) -> float:
        if x <= last_x:
            return float(np.interp(x, xa, ya))
        return last_y + last_s * (x - last_x)

    return young_function(name, fn)


# ---------------------------------------------------------------------------
# Classification checks


def check_delta2(phi: YoungFunction, x_max: float = 200.0, threshold: float = 1e12):
    """Empirical doubling constant: (K, x0) with Phi(2x) <= K Phi(x) on the
    scan grid beyond x0, or None when the ratio diverges.

    The scan is geometric; divergence means the ratio exceeded ``threshold``
    somewhere on the grid.
    """
    if not phi.finite_valued:
        raise ValueError("check_delta2 needs a finite-valued Young function")
    xs = np.geomspace(1e-8, x_max, 400)
    worst = 0.0
    for x in xs:
        fx = phi(float(x))
        if fx <= 0.0:
            continue
        f2x = phi(float(2 * x))
        ratio = f2x / fx
        if not math.isfinite(ratio) or ratio > threshold:
            return None
        worst = max(worst, ratio)
    return worst, 0.0


def estimate_l(psi: YoungFunction, k_max: int = 40) -> float:
    """Largest exponent l on the grid 1, 1.25, ..., 4 such that
    Psi(x) / x^l stays bounded as x decreases to 0 (sampled at x = 2^-k).

    Boundedness of the sampled ratio stands in for existence of the limit.
    """
    xs = [2.0**-k for k in range(1, k_max + 1)]
    vals = [psi(x) for x in xs]
    if any(math.isinf(v) for v in vals):
        raise ValueError("estimate_l needs Psi finite near 0")
    best = 1.0
    for l in np.arange(1.0, 4.0 + 1e-9, 0.25):
        ratios = [v / x**l for v, x in zip(vals, xs)]
        head = max(ratios[: k_max // 2])
        tail = ratios[-1]
        if tail <= 8.0 * head + 1e-300:
            best = float(l)
    return best


def check_strong_equivalence(psi1: YoungFunction, psi2: YoungFunction):
    """Search a log grid of scalings (a, b) for the sandwich
    Psi1(a x) <= Psi2(x) <= Psi1(b x) over sampled x; None when absent."""
    xs = np.geomspace(1e-3, 1e3, 61)
    # exact 1.0 must be on the grid so that self-equivalence returns (1, 1)
    scales = np.unique(np.concatenate([[1.0], np.geomspace(1e-2, 1e2, 41)]))

    def left_ok(a: float) -> bool:
        return all(psi1(float(a * x)) <= psi2(float(x)) for x in xs)

    def right_ok(b: float) -> bool:
        return all(psi2(float(x)) <= psi1(float(b * x)) for x in xs)

    a_best = None
    for a in reversed(scales):
        if left_ok(float(a)):
            a_best = float(a)
            break
    b_best = None
    for b in scales:
        if right_ok(float(b)):
            b_best = float(b)
            break
    if a_best is None or b_best is None:
        return None
    return a_best, b_best
