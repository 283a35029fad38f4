"""Normalized 2-cocycles on discrete groups.

A 2-cocycle is a map Omega: G x G -> C* with

    Omega(r, s) Omega(rs, t) = Omega(s, t) Omega(r, st)
    Omega(r, e) = Omega(e, r) = 1.

Cocycles are stored as callables with a memo table keyed by element pairs;
the O(ball^2) verifiers build dense value tables instead and vectorize the
triple check.  Every cocycle splits uniquely as |Omega| times a unimodular
phase, and both parts are again cocycles.

The finite model of the circle extension realizes G x T as G x Z_n for
cocycles whose phase takes values in the n-th roots of unity.  With
counting measure on the fiber, the embedding Gamma(f)(s, k) = zeta^{-k} f(s)
intertwines the twisted and plain convolutions up to the factor 1/n
(the circle has total mass 1, the fiber has mass n); see
``central_extension_embed``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .groups import Group, ball_elements
from .orlicz import SupportedFunction
from .weights import Weight


class DominationViolation(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class Cocycle:
    group: Group
    fn: object
    name: str

    def __post_init__(self):
        object.__setattr__(self, "_memo", {})
        object.__setattr__(self, "_aux", {})

    def __call__(self, s, t) -> complex:
        key = (s, t)
        v = self._memo.get(key)
        if v is None:
            v = complex(self.fn(s, t))
            if v == 0:
                raise ValueError(f"cocycle {self.name} vanishes at {key}")
            self._memo[key] = v
        return v

    def __repr__(self):  # pragma: no cover
        return f"Cocycle({self.name} on {self.group.name})"


def one_cocycle(group: Group) -> Cocycle:
    return Cocycle(group, lambda s, t: 1.0, "one")


def coboundary_from_weight(w: Weight) -> Cocycle:
    """The positive real coboundary (s, t) -> w(st) / (w(s) w(t)); its
    phase part is identically 1."""
    group = w.group

    def fn(s, t):
        return w(group.op(s, t)) / (w(s) * w(t))

    return Cocycle(group, fn, f"cobound:{w.name}")


def bicharacter_cocycle(group: Group, theta: float | None = None) -> Cocycle:
    """Unimodular bicharacter twists.

    On Z^d (d >= 2): Omega(x, y) = exp(i theta x_d y_1); on Z it pairs the
    single coordinates.  On cyclic groups and their products the same
    pairing applies with the default theta = 2 pi / n, which makes the
    values n-th roots of unity.
    """
    if theta is None:
        if group.name.startswith("Zn:"):
            n = int(group.name.split(":", 1)[1].split("x")[0])
            theta = 2.0 * math.pi / n
        else:
            raise ValueError("theta is required for infinite groups")

    def fn(s, t):
        return cmath.exp(1j * theta * s[-1] * t[0])

    return Cocycle(group, fn, f"bichar:{theta:g}")


def product_cocycle(c1: Cocycle, c2: Cocycle) -> Cocycle:
    if c1.group is not c2.group and c1.group.name != c2.group.name:
        raise ValueError("product of cocycles on different groups")
    return Cocycle(c1.group, lambda s, t: c1(s, t) * c2(s, t), f"prod:{c1.name}*{c2.name}")


def polar(omega: Cocycle):
    """The unique split Omega = |Omega| Omega_T into a positive part and a
    unimodular phase; both are cocycles and their product reconstructs
    Omega exactly."""

    def modulus_fn(s, t):
        return abs(omega(s, t))

    def phase_fn(s, t):
        v = omega(s, t)
        return v / abs(v)

    return (
        Cocycle(omega.group, modulus_fn, f"abs({omega.name})"),
        Cocycle(omega.group, phase_fn, f"phase({omega.name})"),
    )


# ---------------------------------------------------------------------------
# Verification


@dataclass(frozen=True)
class CocycleReport:
    identity_residual: float
    normalization_residual: float
    sup_abs: float
    witness: tuple | None
    n_triples: int
    sampled: bool


def verify_cocycle(
    omega: Cocycle,
    radius: int,
    triple_cap: int = 6_000_000,
    sample_triples: int = 200_000,
    seed: int = 0,
) -> CocycleReport:
    """Max residual of the cocycle identity over all triples from the
    radius ball (arguments of the identity reach the 2*radius ball), plus
    the normalization residual and sup |Omega| over the scanned pairs.

    Above ``triple_cap`` total triples, a seeded random sample is checked
    instead and the report says so.
    """
    group = omega.group
    elems = ball_elements(group, radius)
    elems2 = ball_elements(group, 2 * radius)
    n1 = len(elems)

    if n1**3 <= triple_cap:
        index2 = {g: i for i, g in enumerate(elems2)}
        n2 = len(elems2)
        w = np.empty((n2, n2), dtype=complex)
        for i, s in enumerate(elems2):
            for j, t in enumerate(elems2):
                w[i, j] = omega(s, t)
        prod = np.empty((n1, n1), dtype=np.int64)
        for i, s in enumerate(elems):
            for j, t in enumerate(elems):
                prod[i, j] = index2[group.op(s, t)]
        worst = 0.0
        witness = None
        wsub = w[:n1, :n1]
        for r in range(n1):
            lhs = w[r, :n1][:, None] * w[prod[r], :n1]
            rhs = wsub * np.take(w[r], prod)
            diff = np.abs(lhs - rhs)
            k = int(np.argmax(diff))
            if diff.flat[k] > worst:
                worst = float(diff.flat[k])
                i, j = np.unravel_index(k, diff.shape)
                witness = (elems[r], elems[i], elems[j])
        e_idx = index2[group.identity]
        norm_res = float(
            max(np.abs(w[e_idx, :] - 1.0).max(), np.abs(w[:, e_idx] - 1.0).max())
        )
        sup_abs = float(np.abs(w).max())
        return CocycleReport(worst, norm_res, sup_abs, witness, n1**3, False)

    rng = np.random.default_rng(seed)
    worst = 0.0
    witness = None
    sup_abs = 0.0
    for _ in range(sample_triples):
        r, s, t = (elems[int(k)] for k in rng.integers(0, n1, size=3))
        rs = group.op(r, s)
        st = group.op(s, t)
        lhs = omega(r, s) * omega(rs, t)
        rhs = omega(s, t) * omega(r, st)
        sup_abs = max(sup_abs, abs(omega(r, s)), abs(omega(s, t)))
        d = abs(lhs - rhs)
        if d > worst:
            worst, witness = float(d), (r, s, t)
    norm_res = 0.0
    for g in elems:
        norm_res = max(
            norm_res, abs(omega(g, group.identity) - 1.0), abs(omega(group.identity, g) - 1.0)
        )
    return CocycleReport(worst, float(norm_res), float(sup_abs), witness, sample_triples, True)


# ---------------------------------------------------------------------------
# Domination pairs


@dataclass(frozen=True)
class DominationPair:
    """Nonnegative u, v on a ball with |Omega(s,t)| <= u(s) + v(t) there;
    carries their Luxemburg norms under Psi.  The twisted-algebra constant
    is N_Psi(u) + N_Psi(v)."""

    group: Group
    u: dict
    v: dict
    n_psi_u: float
    n_psi_v: float
    radius: int

    @property
    def algebra_constant(self) -> float:
        return self.n_psi_u + self.n_psi_v


def domination_from_subadditive(omega: Cocycle, ell: Weight, c: float, pair, radius: int) -> DominationPair:
    """Domination u = v = C / ell on the radius ball, verified against
    |Omega| over all ball pairs; raises DominationViolation with a witness
    pair when the bound fails."""
    from .orlicz import luxemburg_norm

    group = omega.group
    elems = ball_elements(group, radius)
    u = {s: c / ell(s) for s in elems}
    # relative guard: when c comes from the empirical weak-subadditivity
    # maximum, the witness pair is a genuine equality case
    for s in elems:
        us = u[s]
        for t in elems:
            if abs(omega(s, t)) > (us + u[t]) * (1.0 + 1e-12):
                raise DominationViolation(
                    f"|Omega({s},{t})| = {abs(omega(s, t)):g} exceeds u(s)+v(t) = {us + u[t]:g}",
                    witness=(s, t),
                )
    uf = SupportedFunction(group, {s: complex(x) for s, x in u.items()})
    n_psi = luxemburg_norm(uf, pair.psi)
    return DominationPair(group=group, u=u, v=dict(u), n_psi_u=n_psi, n_psi_v=n_psi, radius=radius)


# ---------------------------------------------------------------------------
# Finite central extension


def _root_exponent(value: complex, n: int, tol: float = 1e-9) -> int:
    k = round(cmath.phase(value) / (2.0 * math.pi / n)) % n
    if abs(value - cmath.exp(2j * math.pi * k / n)) > tol:
        raise ValueError(f"cocycle value {value!r} is not an {n}-th root of unity")
    return k


def central_extension_group(base: Group, omega_t: Cocycle, n: int) -> Group:
    """G x Z_n with the product (s, a)(t, b) = (st, a + b + c(s, t)) where
    Omega_T(s, t) = zeta^c(s,t); requires a finite base group and phase
    values that are exactly n-th roots of unity."""
    if base.order is None:
        raise ValueError("central extension model needs a finite base group")
    cache = omega_t._aux.get(("extension", n))
    if cache is not None:
        return cache
    elems = ball_elements(base, base.order)  # exhausts the finite group
    expo = {}
    for s in elems:
        for t in elems:
            expo[(s, t)] = _root_exponent(omega_t(s, t), n)

    def op(x, y):
        (s, a), (t, b) = x, y
        return (base.op(s, t), (a + b + expo[(s, t)]) % n)

    def inv(x):
        s, a = x
        si = base.inv(s)
        return (si, (-a - expo[(s, si)]) % n)

    ident = (base.identity, 0)
    generators = tuple((g, k) for g in elems for k in range(n))
    ext = Group(
        name=f"{base.name}xZ{n}",
        op=op,
        inv=inv,
        identity=ident,
        generators=generators,
        order=base.order * n,
    )
    omega_t._aux[("extension", n)] = ext
    return ext


def central_extension_embed(f: SupportedFunction, omega_t: Cocycle, n: int) -> SupportedFunction:
    """Gamma(f)(s, k) = zeta^{-k} f(s) on the finite extension G x Z_n.

    Convention: with counting measure on the fiber (each point has mass 1,
    the circle it models has total mass 1), Gamma(f twisted* g) equals
    (1/n) Gamma(f) * Gamma(g); repeated embeddings share one extension
    group instance.
    """
    ext = central_extension_group(f.group, omega_t, n)
    zeta = cmath.exp(2j * math.pi / n)
    values = {}
    for s, v in f.values.items():
        for k in range(n):
            values[(s, k)] = zeta ** (-k) * v
    return SupportedFunction(ext, values)


# ---------------------------------------------------------------------------
# Spec strings


def parse_cocycle(group: Group, spec: str) -> Cocycle:
    """Cocycle spec strings: ``cobound:{weight-spec}``, ``bichar:{theta}``
    (``bichar:`` picks the root-of-unity default on cyclic groups),
    ``prod:{c1}*{c2}``, ``one``."""
    from .weights import parse_weight

    spec = spec.strip()
    if spec == "one":
        return one_cocycle(group)
    if spec.startswith("cobound:"):
        return coboundary_from_weight(parse_weight(group, spec.split(":", 1)[1]))
    if spec.startswith("bichar"):
        body = spec.split(":", 1)[1] if ":" in spec else ""
        theta = float(body) if body else None
        return bicharacter_cocycle(group, theta)
    if spec.startswith("prod:"):
        body = spec.split(":", 1)[1]
        left, right = body.split("*", 1)
        return product_cocycle(parse_cocycle(group, left), parse_cocycle(group, right))
    raise ValueError(f"unknown cocycle spec {spec!r}")
