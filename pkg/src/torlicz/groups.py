"""Discrete groups with word metrics.

A group is described by its operation, inverse, identity, and a finite
symmetric generating set U.  The length function

    tau(g) = least n with g in U^n,   tau(e) = 0,

is computed by breadth-first search over the Cayley graph; layers are
memoized so repeated queries are cheap.  Ball sizes lambda(U^n) use the
counting measure, which is the Haar measure throughout this package
(all provided groups are discrete and unimodular, so the modular
function is identically 1).

Provided constructors: the integer lattices Z^d with the generating set
{-1,0,1}^d, the discrete Heisenberg group H3(Z), finite cyclic groups
Z_n and their direct products, and the truncated direct sum of copies
of Z_2 ("block group") with its nested subgroup chain.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

DEFAULT_MAX_RADIUS = 64
DEFAULT_MAX_ELEMENTS = 5_000_000


class BudgetError(RuntimeError):
    """A BFS exceeded its configured radius or element budget."""


@dataclass(frozen=True, eq=False)
class Group:
    """A finitely generated discrete group with canonical hashable elements.

    ``generators`` must be symmetric (closed under inverse; it may contain
    the identity).  ``length_hint``, when present, is an exact closed form
    for the word length and is validated against BFS layers in the test
    suite.  ``order`` is the group order for finite groups, else None.
    """

    name: str
    op: Callable
    inv: Callable
    identity: tuple
    generators: tuple
    length_hint: Callable | None = None
    order: int | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        gens = set(self.generators)
        for u in gens:
            if self.inv(u) not in gens:
                raise ValueError(f"generating set of {self.name} is not symmetric at {u}")

    def __repr__(self):  # pragma: no cover
        return f"Group({self.name})"


@dataclass(frozen=True)
class BallTable:
    """BFS layers of the word metric: ``layers[n]`` holds the elements of
    length exactly n, ``sizes[n]`` the cumulative count lambda(U^n)."""

    group: Group
    layers: tuple
    sizes: tuple

    def elements(self, radius: int | None = None) -> list:
        rad = len(self.layers) - 1 if radius is None else radius
        out = []
        for layer in self.layers[: rad + 1]:
            out.extend(layer)
        return out


# ---------------------------------------------------------------------------
# BFS machinery


def _bfs_state(group: Group) -> dict:
    st = group._cache.get("bfs")
    if st is None:
        st = {
            "layers": [[group.identity]],
            "index": {group.identity: 0},
            "frontier": [group.identity],
            "exhausted": False,
        }
        group._cache["bfs"] = st
    return st


def _extend_bfs(group: Group, radius: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> dict:
    st = _bfs_state(group)
    while len(st["layers"]) - 1 < radius and not st["exhausted"]:
        n = len(st["layers"])
        index = st["index"]
        nxt = []
        for g in st["frontier"]:
            for u in group.generators:
                h = group.op(g, u)
                if h not in index:
                    index[h] = n
                    nxt.append(h)
        if len(index) > max_elements:
            raise BudgetError(
                f"ball of radius {n} on {group.name} exceeds the element budget "
                f"({len(index)} > {max_elements})"
            )
        if nxt:
            st["layers"].append(nxt)
            st["frontier"] = nxt
        else:
            st["exhausted"] = True
    return st


def word_length(
    group: Group,
    g,
    max_radius: int = DEFAULT_MAX_RADIUS,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> int:
    """Least n with g in U^n.  Uses the group's exact closed form when one
    is registered, otherwise BFS with memoized layers.

    Raises BudgetError if g is not found within ``max_radius``.
    """
    if group.length_hint is not None:
        return group.length_hint(g)
    st = _bfs_state(group)
    n = st["index"].get(g)
    if n is not None:
        return n
    while not st["exhausted"]:
        reached = len(st["layers"]) - 1
        if reached >= max_radius:
            break
        _extend_bfs(group, reached + 1, max_elements)
        n = st["index"].get(g)
        if n is not None:
            return n
    if st["exhausted"] and g in st["index"]:
        return st["index"][g]
    raise BudgetError(
        f"element {g} of {group.name} not reached within radius {max_radius}"
    )


def ball_table(
    group: Group, radius: int, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> BallTable:
    """BFS layers and cumulative sizes out to the given radius.

    For a finite group the layer sequence is padded with empty layers once
    the group is exhausted, so ``sizes`` stabilizes at the group order.
    """
    st = _extend_bfs(group, radius, max_elements)
    layers = [tuple(layer) for layer in st["layers"][: radius + 1]]
    while len(layers) < radius + 1:
        layers.append(())
    sizes = []
    total = 0
    for layer in layers:
        total += len(layer)
        sizes.append(total)
    return BallTable(group=group, layers=tuple(layers), sizes=tuple(sizes))


def ball_elements(group: Group, radius: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> list:
    return ball_table(group, radius, max_elements).elements()


def ball_sizes(
    group: Group, n_max: int, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> list[int]:
    """lambda(U^1), ..., lambda(U^n_max) by BFS layer counting."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    table = ball_table(group, n_max, max_elements)
    return list(table.sizes[1:])


@dataclass(frozen=True)
class GrowthFit:
    degree: float
    residual: float
    window: tuple


def growth_degree_estimate(sizes: Iterable[int]) -> GrowthFit:
    """Least-squares slope of log lambda(U^n) against log n over the upper
    half of the window, with the RMS residual of the fit."""
    sizes = list(sizes)
    ns = np.arange(1, len(sizes) + 1, dtype=float)
    lo = max(2, (len(sizes) + 1) // 2)
    mask = ns >= lo
    if int(mask.sum()) < 3:
        raise ValueError("growth fit needs at least 3 points in the upper window")
    xs = np.log(ns[mask])
    ys = np.log(np.asarray(sizes, dtype=float)[mask])
    coef = np.polyfit(xs, ys, 1)
    resid = ys - np.polyval(coef, xs)
    return GrowthFit(
        degree=float(coef[0]),
        residual=float(np.sqrt(np.mean(resid**2))),
        window=(int(lo), len(sizes)),
    )


# ---------------------------------------------------------------------------
# Constructors


def integer_lattice(d: int) -> Group:
    """Z^d with the generating set of all vectors with coordinates in
    {-1,0,1}.  Word length is the sup norm."""
    if d < 1:
        raise ValueError("d must be >= 1")
    gens = tuple(g for g in itertools.product((-1, 0, 1), repeat=d))
    return Group(
        name=f"Z^d:{d}",
        op=lambda a, b: tuple(x + y for x, y in zip(a, b)),
        inv=lambda a: tuple(-x for x in a),
        identity=(0,) * d,
        generators=gens,
        length_hint=lambda a: max(abs(x) for x in a) if a else 0,
    )


def heisenberg_group() -> Group:
    """Discrete Heisenberg group H3(Z), elements (a, b, c) standing for the
    unitriangular matrix [[1,a,c],[0,1,b],[0,0,1]], generated by x, y and
    their inverses."""

    def op(u, v):
        return (u[0] + v[0], u[1] + v[1], u[2] + v[2] + u[0] * v[1])

    def inv(u):
        return (-u[0], -u[1], -u[2] + u[0] * u[1])

    gens = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0))
    return Group(name="H3", op=op, inv=inv, identity=(0, 0, 0), generators=gens)


def cyclic_group(n: int) -> Group:
    if n < 1:
        raise ValueError("n must be >= 1")
    return cyclic_product_group((n,))


def cyclic_product_group(orders: tuple) -> Group:
    """Direct product of cyclic groups Z_{n_1} x ... x Z_{n_m}, generated by
    the signed unit vectors (plus the identity)."""
    orders = tuple(int(n) for n in orders)
    if any(n < 1 for n in orders):
        raise ValueError("all orders must be >= 1")
    m = len(orders)

    def op(a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, orders))

    def inv(a):
        return tuple((-x) % n for x, n in zip(a, orders))

    ident = (0,) * m
    gens = {ident}
    for i, n in enumerate(orders):
        e = tuple(1 if j == i else 0 for j in range(m))
        gens.add(e)
        gens.add(inv(e))

    def hint(a):
        return sum(min(x, n - x) for x, n in zip(a, orders))

    name = "Zn:" + "x".join(str(n) for n in orders)
    order = math.prod(orders)
    return Group(
        name=name,
        op=op,
        inv=inv,
        identity=ident,
        generators=tuple(sorted(gens)),
        length_hint=hint,
        order=order,
    )


def block_group(n_blocks: int) -> Group:
    """Truncation of the infinite direct sum of copies of Z_2 to the first
    ``n_blocks`` coordinates.  The nested subgroups G_i consist of the
    elements supported on the first i coordinates."""
    if n_blocks < 1:
        raise ValueError("n_blocks must be >= 1")

    def op(a, b):
        return tuple((x + y) % 2 for x, y in zip(a, b))

    ident = (0,) * n_blocks
    gens = tuple(
        tuple(1 if j == i else 0 for j in range(n_blocks)) for i in range(n_blocks)
    )
    return Group(
        name=f"Block:{n_blocks}",
        op=op,
        inv=lambda a: a,
        identity=ident,
        generators=gens,
        length_hint=lambda a: sum(a),
        order=2**n_blocks,
    )


def block_index(group: Group, g) -> int:
    """Largest 1-based coordinate position supporting g (0 for the identity);
    g lies in the subgroup chain member G_i exactly when block_index <= i."""
    top = 0
    for i, x in enumerate(g, start=1):
        if x:
            top = i
    return top


# ---------------------------------------------------------------------------
# Spec strings and element serialization


def parse_group(spec: str) -> Group:
    """Group spec strings: ``Z^d:{d}``, ``H3``, ``Zn:{n}`` (products as
    ``Zn:{n}x{m}``), ``Block:{N}``."""
    spec = spec.strip()
    if spec == "H3":
        return heisenberg_group()
    if spec.startswith("Z^d:"):
        return integer_lattice(int(spec.split(":", 1)[1]))
    if spec.startswith("Zn:"):
        orders = tuple(int(t) for t in spec.split(":", 1)[1].split("x"))
        return cyclic_product_group(orders)
    if spec.startswith("Block:"):
        return block_group(int(spec.split(":", 1)[1]))
    raise ValueError(f"unknown group spec {spec!r}")


def element_from_list(group: Group, values: list) -> tuple:
    """Canonical element from its JSON integer-array form."""
    elt = tuple(int(v) for v in values)
    if len(elt) != len(group.identity):
        raise ValueError(
            f"element {values} has arity {len(elt)}, expected {len(group.identity)} for {group.name}"
        )
    # reduce into canonical representatives via op with the identity
    return group.op(elt, group.identity)


def element_to_list(g) -> list:
    return [int(x) for x in g]
