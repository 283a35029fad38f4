"""Weight families on discrete groups and their hypothesis checkers.

Weights here are positive functions with w(e) = 1 and 1/w bounded.  The
three length-function families are

    poly      (1 + tau)^beta
    subexp    exp(C tau^alpha),            0 < alpha <= 1
    subexp2   exp(C tau / ln(1 + tau)^gamma)   (value 1 at the identity)

plus quotients, the block weight on the truncated Z_2 sum, and constants.

Every "for all s, t" hypothesis (submultiplicativity, weak subadditivity,
symmetry, domination) is checked over finite balls U^r x U^r and the report
carries the radius; that is the only honest finite-scale semantics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .groups import Group, ball_elements, block_index, word_length


class WeightParameterError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Weight:
    group: Group
    fn: object
    kind: str
    name: str

    def __call__(self, s) -> float:
        return self.fn(s)

    def __repr__(self):  # pragma: no cover
        return f"Weight({self.name} on {self.group.name})"


def _tau_weight(group: Group, name: str, kind: str, of_tau) -> Weight:
    memo: dict = {}

    def fn(s) -> float:
        v = memo.get(s)
        if v is None:
            v = of_tau(word_length(group, s))
            memo[s] = v
        return v

    return Weight(group=group, fn=fn, kind=kind, name=name)


def constant_weight(group: Group) -> Weight:
    return Weight(group=group, fn=lambda s: 1.0, kind="const", name="const")


def make_poly_weight(group: Group, beta: float) -> Weight:
    if beta < 0:
        raise WeightParameterError("poly weight needs beta >= 0")
    return _tau_weight(group, f"poly:{beta:g}", "poly", lambda t: (1.0 + t) ** beta)


def make_subexp_weight(group: Group, alpha: float, c: float) -> Weight:
    if not (0.0 < alpha <= 1.0) or c <= 0:
        raise WeightParameterError("subexp weight needs 0 < alpha <= 1 and C > 0")
    return _tau_weight(
        group, f"subexp:{alpha:g}:{c:g}", "subexp", lambda t: math.exp(c * t**alpha)
    )


def make_subexp2_weight(group: Group, gamma: float, c: float) -> Weight:
    """exp(C tau / ln(1+tau)^gamma); the formula is 0/0 at the identity,
    where the value is defined to be 1 so that w(e) = 1."""
    if gamma <= 0 or c <= 0:
        raise WeightParameterError("subexp2 weight needs gamma > 0 and C > 0")

    def of_tau(t: int) -> float:
        if t == 0:
            return 1.0
        return math.exp(c * t / math.log1p(t) ** gamma)

    return _tau_weight(group, f"subexp2:{gamma:g}:{c:g}", "subexp2", of_tau)


def quotient_weight(sigma: Weight, omega: Weight) -> Weight:
    """Pointwise sigma/omega.  Submultiplicativity of the quotient is the
    caller's hypothesis to verify via check_submultiplicative."""
    if sigma.group is not omega.group and sigma.group.name != omega.group.name:
        raise ValueError("quotient_weight needs weights on the same group")
    return Weight(
        group=sigma.group,
        fn=lambda s: sigma(s) / omega(s),
        kind="quotient",
        name=f"quot:{sigma.name}/{omega.name}",
    )


def make_block_weight(group: Group, levels) -> Weight:
    """Block weight 1 + sum_i n_i on the chain gaps G_{i+1} minus G_i of the
    truncated Z_2 sum; requires increasing levels >= 1.

    Construction verifies on samples that w(st) <= max(w(s), w(t)); equality
    can fail (take t = s^{-1}), so only <= is promised.
    """
    levels = [float(x) for x in levels]
    if any(x < 1 for x in levels) or any(b <= a for a, b in zip(levels, levels[1:])):
        raise WeightParameterError("block levels must be increasing and >= 1")
    n_coords = len(group.identity)
    if len(levels) < n_coords - 1:
        raise WeightParameterError(
            f"need at least {n_coords - 1} levels for {group.name}"
        )

    def fn(s) -> float:
        top = block_index(group, s)
        if top <= 1:
            return 1.0
        return 1.0 + levels[top - 2]

    w = Weight(group=group, fn=fn, kind="block", name="block")
    rng = np.random.default_rng(0xB10C)
    elems = ball_elements(group, n_coords)
    for _ in range(64):
        s = elems[int(rng.integers(0, len(elems)))]
        t = elems[int(rng.integers(0, len(elems)))]
        if w(group.op(s, t)) > max(w(s), w(t)) + 1e-12:
            raise AssertionError("block weight violated w(st) <= max(w(s), w(t))")
    return w


# ---------------------------------------------------------------------------
# Ball-pair checkers


@dataclass(frozen=True)
class PairCheck:
    constant: float
    witness: tuple
    radius: int


def _pair_tables(w_group: Group, radius: int):
    elems = ball_elements(w_group, radius)
    elems2 = ball_elements(w_group, 2 * radius)
    index2 = {g: i for i, g in enumerate(elems2)}
    n = len(elems)
    prod = np.empty((n, n), dtype=np.int64)
    for i, s in enumerate(elems):
        for j, t in enumerate(elems):
            prod[i, j] = index2[w_group.op(s, t)]
    return elems, elems2, prod


def check_submultiplicative(w: Weight, radius: int) -> PairCheck:
    """K = max over ball pairs of w(st) / (w(s) w(t)), with an argmax
    witness pair."""
    elems, elems2, prod = _pair_tables(w.group, radius)
    v = np.array([w(g) for g in elems])
    v2 = np.array([w(g) for g in elems2])
    ratios = v2[prod] / np.outer(v, v)
    i, j = np.unravel_index(int(np.argmax(ratios)), ratios.shape)
    return PairCheck(float(ratios[i, j]), (elems[i], elems[j]), radius)


def check_weak_subadditive(w: Weight, radius: int) -> PairCheck:
    """Least C with w(st) <= C (w(s) + w(t)) over ball pairs."""
    elems, elems2, prod = _pair_tables(w.group, radius)
    v = np.array([w(g) for g in elems])
    v2 = np.array([w(g) for g in elems2])
    ratios = v2[prod] / (v[:, None] + v[None, :])
    i, j = np.unravel_index(int(np.argmax(ratios)), ratios.shape)
    return PairCheck(float(ratios[i, j]), (elems[i], elems[j]), radius)


def check_symmetric(w: Weight, radius: int) -> bool:
    """Exact comparison w(s) == w(s^{-1}) over the ball."""
    for g in ball_elements(w.group, radius):
        if w(g) != w(w.group.inv(g)):
            return False
    return True


def check_grs(w: Weight, s, n_max: int) -> np.ndarray:
    """The sequence w(s^n)^(1/n), n = 1..n_max.  A trend report: the GRS
    condition is a limit statement and is never decided here."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    out = np.empty(n_max)
    g = w.group.identity
    for n in range(1, n_max + 1):
        g = w.group.op(g, s)
        out[n - 1] = w(g) ** (1.0 / n)
    return out


def check_lss_domination(sigma: Weight, omega: Weight, radius: int) -> PairCheck:
    """Least empirical M with

        sigma(st)/(sigma(s)sigma(t)) <= M omega(st)/(omega(s)omega(t))

    over ball pairs; equals the submultiplicative constant of sigma/omega."""
    if sigma.group is not omega.group and sigma.group.name != omega.group.name:
        raise ValueError("check_lss_domination needs weights on one group")
    elems, elems2, prod = _pair_tables(sigma.group, radius)
    sv = np.array([sigma(g) for g in elems])
    sv2 = np.array([sigma(g) for g in elems2])
    ov = np.array([omega(g) for g in elems])
    ov2 = np.array([omega(g) for g in elems2])
    ratios = (sv2[prod] * np.outer(ov, ov)) / (np.outer(sv, sv) * ov2[prod])
    i, j = np.unravel_index(int(np.argmax(ratios)), ratios.shape)
    return PairCheck(float(ratios[i, j]), (elems[i], elems[j]), radius)


# ---------------------------------------------------------------------------
# The concave-difference analysis backing the subexp2 quotient


@dataclass(frozen=True)
class PFunctionResult:
    x0: float
    m_const: float
    max_defect: float
    violations: int
    params: tuple


class PFunctionError(RuntimeError):
    pass


def analyze_p_function(
    beta: float,
    gamma: float,
    c: float,
    x_max: float = 1.0e6,
    x0_bound: float = 1.0e5,
    scan_points: int = 4000,
    grid_points: int = 200,
) -> PFunctionResult:
    """Analyze p(x) = C x / ln(e + x)^beta - gamma ln(1 + x).

    Locates x0 so that on a dense grid of [x0, x_max] the function is
    positive with positive, decreasing finite-difference slope, then
    computes M = max(0, max p(x+y) - p(x) - p(y)) over a log-spaced grid of
    [x0, x_max] x [0, x_max] and verifies 0 < p(x+y) <= p(x) + p(y) + M on
    that grid.  Raises PFunctionError when no x0 exists below x0_bound.
    """
    if beta <= 0 or gamma <= 0 or c <= 0:
        raise WeightParameterError("analyze_p_function needs beta, gamma, C > 0")

    def p(x):
        x = np.asarray(x, dtype=float)
        return c * x / np.log(math.e + x) ** beta - gamma * np.log1p(x)

    xs = np.geomspace(1e-3, x_max, scan_points)
    h = 1e-4 * (1.0 + xs)
    slopes = (p(xs + h) - p(xs - h)) / (2.0 * h)
    pv = p(xs)
    good = (pv > 0) & (slopes > 0)
    good[:-1] &= slopes[1:] <= slopes[:-1] * (1.0 + 1e-9)
    # smallest grid index from which every later point is good
    bad = np.nonzero(~good)[0]
    start = 0 if bad.size == 0 else int(bad[-1]) + 1
    if start >= len(xs) or xs[start] > x0_bound:
        raise PFunctionError(
            f"no x0 below {x0_bound:g} for (beta, gamma, C) = ({beta:g}, {gamma:g}, {c:g})"
        )
    x0 = float(xs[start])

    xg = np.geomspace(x0, x_max, grid_points)
    yg = np.concatenate([[0.0], np.geomspace(1e-3, x_max, grid_points - 1)])
    px = p(xg)[:, None]
    py = p(yg)[None, :]
    pxy = p(xg[:, None] + yg[None, :])
    defect = pxy - px - py
    m_const = max(0.0, float(defect.max()))
    violations = int(np.sum(~((pxy > 0) & (pxy <= px + py + m_const + 1e-12))))
    return PFunctionResult(
        x0=x0,
        m_const=m_const,
        max_defect=float(defect.max()),
        violations=violations,
        params=(beta, gamma, c),
    )


# ---------------------------------------------------------------------------
# Spec strings


def parse_weight(group: Group, spec: str) -> Weight:
    """Weight spec strings: ``poly:{beta}``, ``subexp:{alpha}:{C}``,
    ``subexp2:{gamma}:{C}``, ``quot:{w1}/{w2}``, ``block:{n1,n2,...}``,
    ``const``."""
    spec = spec.strip()
    if spec == "const":
        return constant_weight(group)
    if spec.startswith("poly:"):
        return make_poly_weight(group, float(spec.split(":", 1)[1]))
    if spec.startswith("subexp2:"):
        g, c = spec.split(":")[1:]
        return make_subexp2_weight(group, float(g), float(c))
    if spec.startswith("subexp:"):
        a, c = spec.split(":")[1:]
        return make_subexp_weight(group, float(a), float(c))
    if spec.startswith("quot:"):
        body = spec.split(":", 1)[1]
        num, den = body.split("/", 1)
        return quotient_weight(parse_weight(group, num), parse_weight(group, den))
    if spec.startswith("block:"):
        levels = [float(t) for t in spec.split(":", 1)[1].split(",")]
        return make_block_weight(group, levels)
    raise ValueError(f"unknown weight spec {spec!r}")
