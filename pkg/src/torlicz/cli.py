"""Command-line front end and batch verification suites.

Subcommands: ``norm``, ``conv``, ``growth``, ``plemma``, ``check <name>``,
``suite <preset|file>``, ``report``.  Exit codes: 0 pass, 1 check failure,
2 usage or budget error.

A suite is a list of CheckSpec entries run in dependency order; reruns
with the same seed reproduce identical numeric report fields (the
timestamp is the only field allowed to differ).  Set TORLICZ_THREADS to
run independent checks of a suite on a thread pool; assembly order stays
deterministic either way.
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .cocycles import (
    DominationViolation,
    domination_from_subadditive,
    parse_cocycle,
    polar,
    central_extension_embed,
    verify_cocycle,
)
from .groups import BudgetError, ball_elements, ball_sizes, growth_degree_estimate, parse_group
from .orlicz import (
    SupportedFunction,
    dual_pairing_bound,
    function_from_json,
    function_to_json,
    l1_norm,
    luxemburg_norm,
    modular,
    orlicz_norm,
    psi_membership_series,
    random_supported_function,
    weighted_l1_norm,
)
from .twisted import (
    AlgebraContext,
    check_algebra_bound,
    check_associativity,
    check_differential_bound,
    check_intertwining,
    check_module_bound,
    convolution_matrix,
    finite_symmetry_check,
    involution,
    spectral_radius_estimate,
    twisted_convolve,
)
from .weights import (
    analyze_p_function,
    check_grs,
    check_lss_domination,
    check_submultiplicative,
    check_symmetric,
    check_weak_subadditive,
    parse_weight,
)
from .young import parse_pair

RESIDUAL_TOL = 1e-10
EXTENSION_TOL = 1e-12
EIGEN_TOL = 1e-8


@dataclass(frozen=True)
class CheckSpec:
    """One named check with everything needed to reproduce it."""

    check: str
    group: str = "Z^d:1"
    pair: str = "Lp:2"
    weight: str | None = None
    weight2: str | None = None
    cocycle: str | None = None
    radius: int = 8
    trials: int = 50
    seed: int = 0
    params: dict = field(default_factory=dict)

    @staticmethod
    def from_dict(doc: dict) -> "CheckSpec":
        known = {f for f in CheckSpec.__dataclass_fields__}
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown CheckSpec fields: {sorted(unknown)}")
        return CheckSpec(**doc)


@dataclass(frozen=True)
class Report:
    suite: str
    spec: tuple
    results: tuple
    environment: dict
    passed: bool


def _jsonable(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    return obj


# ---------------------------------------------------------------------------
# Check runners.  Each takes a CheckSpec and returns a dict that includes at
# least {"check", "pass"}; numeric fields are fully determined by the spec.


def _ctx(spec: CheckSpec) -> AlgebraContext:
    group = parse_group(spec.group)
    pair = parse_pair(spec.pair)
    cocycle = parse_cocycle(group, spec.cocycle or "one")
    weight = parse_weight(group, spec.weight) if spec.weight else None
    aux = parse_weight(group, spec.weight2) if spec.weight2 else None
    return AlgebraContext(cocycle=cocycle, pair=pair, weight=weight, aux_weight=aux)


def _rng(spec: CheckSpec) -> np.random.Generator:
    return np.random.default_rng(spec.seed)


def _run_cocycle_verify(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    rep = verify_cocycle(ctx.cocycle, spec.radius, seed=spec.seed)
    tol = spec.params.get("tol", RESIDUAL_TOL)
    return {
        "identity_residual": rep.identity_residual,
        "normalization_residual": rep.normalization_residual,
        "sup_abs": rep.sup_abs,
        "n_triples": rep.n_triples,
        "sampled": rep.sampled,
        "witness": rep.witness,
        "pass": rep.identity_residual <= tol and rep.normalization_residual <= tol,
    }


def _run_cocycle_polar(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    modulus, phase = polar(ctx.cocycle)
    elems = ball_elements(ctx.cocycle.group, spec.radius)
    worst_recon = 0.0
    worst_unimod = 0.0
    for s in elems:
        for t in elems:
            v = ctx.cocycle(s, t)
            worst_recon = max(worst_recon, abs(modulus(s, t) * phase(s, t) - v))
            worst_unimod = max(worst_unimod, abs(abs(phase(s, t)) - 1.0))
    parts_ok = (
        verify_cocycle(modulus, spec.radius).identity_residual <= RESIDUAL_TOL
        and verify_cocycle(phase, spec.radius).identity_residual <= RESIDUAL_TOL
    )
    return {
        "reconstruction_residual": worst_recon,
        "unimodularity_residual": worst_unimod,
        "parts_are_cocycles": parts_ok,
        "pass": worst_recon <= 1e-12 and worst_unimod <= 1e-12 and parts_ok,
    }


def _domination(spec: CheckSpec):
    ctx = _ctx(spec)
    if ctx.weight is None:
        raise ValueError("domination needs a weight (the weakly subadditive ell)")
    c = spec.params.get("C")
    if c is None:
        c = check_weak_subadditive(ctx.weight, spec.radius).constant
    return ctx, domination_from_subadditive(ctx.cocycle, ctx.weight, float(c), ctx.pair, spec.radius)


def _run_domination(spec: CheckSpec) -> dict:
    try:
        _, dom = _domination(spec)
    except DominationViolation as exc:
        return {"pass": False, "witness": exc.witness, "error": str(exc)}
    return {
        "n_psi_u": dom.n_psi_u,
        "n_psi_v": dom.n_psi_v,
        "algebra_constant": dom.algebra_constant,
        "radius": dom.radius,
        "pass": True,
    }


def _run_algebra_bound(spec: CheckSpec) -> dict:
    ctx, dom = _domination(spec)
    rng = _rng(spec)
    group = ctx.cocycle.group
    sample_radius = spec.params.get("sample_radius", max(1, spec.radius // 4))
    worst = math.inf
    witness = None
    ok = True
    for _ in range(spec.trials):
        f = random_supported_function(group, rng, radius=sample_radius)
        g = random_supported_function(group, rng, radius=sample_radius)
        rep = check_algebra_bound(f, g, ctx, dom)
        if rep["margin"] < worst:
            worst = rep["margin"]
            witness = {"f": function_to_json(f), "g": function_to_json(g)}
        ok = ok and rep["pass"]
    return {"trials": spec.trials, "worst_margin": worst, "witness": witness, "pass": ok}


def _run_module_bound(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    rng = _rng(spec)
    group = ctx.cocycle.group
    worst = math.inf
    witness = None
    ok = True
    for _ in range(spec.trials):
        f = random_supported_function(group, rng, radius=spec.params.get("sample_radius", 3))
        g = random_supported_function(group, rng, radius=spec.params.get("sample_radius", 3))
        rep = check_module_bound(f, g, ctx)
        if rep["margin"] < worst:
            worst = rep["margin"]
            witness = {"f": function_to_json(f), "g": function_to_json(g)}
        ok = ok and rep["pass"]
    return {"trials": spec.trials, "worst_margin": worst, "witness": witness, "pass": ok}


def _run_assoc(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    rng = _rng(spec)
    group = ctx.cocycle.group
    tol = spec.params.get("tol", RESIDUAL_TOL)
    worst = 0.0
    witness = None
    for _ in range(spec.trials):
        f, g, h = (
            random_supported_function(group, rng, radius=spec.params.get("sample_radius", 3))
            for _ in range(3)
        )
        rep = check_associativity(f, g, h, ctx.cocycle)
        if rep.value > worst:
            worst, witness = rep.value, rep.witness
    return {"trials": spec.trials, "worst_residual": worst, "witness": witness, "pass": worst <= tol}


def _run_intertwine(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    if ctx.weight is None:
        raise ValueError("intertwine needs the weight of the coboundary")
    rng = _rng(spec)
    group = ctx.cocycle.group
    tol = spec.params.get("tol", RESIDUAL_TOL)
    worst = 0.0
    witness = None
    for _ in range(spec.trials):
        f = random_supported_function(group, rng, radius=spec.params.get("sample_radius", 4))
        g = random_supported_function(group, rng, radius=spec.params.get("sample_radius", 4))
        rep = check_intertwining(f, g, ctx.weight, ctx.cocycle)
        if rep.value > worst:
            worst, witness = rep.value, rep.witness
    return {"trials": spec.trials, "worst_residual": worst, "witness": witness, "pass": worst <= tol}


def _run_differential(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    rng = _rng(spec)
    group = ctx.cocycle.group
    worst = math.inf
    witness = None
    ok = True
    for _ in range(spec.trials):
        f = random_supported_function(group, rng, radius=spec.params.get("sample_radius", 3))
        g = random_supported_function(group, rng, radius=spec.params.get("sample_radius", 3))
        rep = check_differential_bound(f, g, ctx, radius=spec.radius)
        if rep["margin"] < worst:
            worst = rep["margin"]
            witness = {"f": function_to_json(f), "g": function_to_json(g)}
        ok = ok and rep["pass"]
    return {"trials": spec.trials, "worst_margin": worst, "witness": witness, "pass": ok}


def _run_spectral(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    rng = _rng(spec)
    group = ctx.cocycle.group
    f = random_supported_function(group, rng, radius=spec.params.get("sample_radius", 2))
    n_max = spec.params.get("n_max", 24)
    seq_phi = spectral_radius_estimate(f, ctx, norm="phi", n_max=n_max)
    seq_l1 = spectral_radius_estimate(f, ctx, norm="l1", n_max=n_max)
    gap = abs(seq_phi[-1] - seq_l1[-1]) / max(seq_l1[-1], 1e-300)
    tol = spec.params.get("gap_tol", 0.05)
    verdict = gap <= tol if group.order is not None else True
    return {
        "phi_sequence_tail": float(seq_phi[-1]),
        "l1_sequence_tail": float(seq_l1[-1]),
        "relative_gap": float(gap),
        "trend_only": group.order is None,
        "pass": bool(verdict),
    }


def _run_symmetry_finite(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    rng = _rng(spec)
    group = ctx.cocycle.group
    tol = spec.params.get("tol", EIGEN_TOL)
    worst_real = math.inf
    worst_imag = 0.0
    ok = True
    for _ in range(spec.trials):
        f = random_supported_function(group, rng, radius=2)
        rep = finite_symmetry_check(f, ctx, tol=tol)
        worst_real = min(worst_real, rep.min_real / rep.scale)
        worst_imag = max(worst_imag, rep.max_imag / rep.scale)
        ok = ok and rep.passed
    return {
        "trials": spec.trials,
        "worst_scaled_min_real": worst_real,
        "worst_scaled_max_imag": worst_imag,
        "pass": ok,
    }


def _run_central_ext(spec: CheckSpec) -> dict:
    group = parse_group(spec.group)
    if group.order is None:
        raise ValueError("central-ext needs a finite group")
    ctx = _ctx(spec)
    n = spec.params.get("n", group.order)
    tol = spec.params.get("tol", EXTENSION_TOL)
    elems = ball_elements(group, group.order)
    worst = 0.0
    witness = None
    for s in elems:
        for t in elems:
            f = SupportedFunction(group, {s: 1.0})
            g = SupportedFunction(group, {t: 1.0})
            lhs = central_extension_embed(twisted_convolve(f, g, ctx.cocycle), ctx.cocycle, n)
            gf = central_extension_embed(f, ctx.cocycle, n)
            gg = central_extension_embed(g, ctx.cocycle, n)
            rhs = twisted_convolve(gf, gg, _one_on(gf.group)).scale(1.0 / n)
            resid = l1_norm(lhs.sub(rhs))
            if resid > worst:
                worst, witness = resid, (s, t)
    return {"residual": worst, "witness": witness, "n": n, "pass": worst <= tol}


def _one_on(group):
    from .cocycles import one_cocycle

    return one_cocycle(group)


def _run_submult(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    rep = check_submultiplicative(ctx.weight, spec.radius)
    bound = spec.params.get("bound")
    return {
        "radius": rep.radius,
        "constant": rep.constant,
        "witness": rep.witness,
        "pass": math.isfinite(rep.constant) and (bound is None or rep.constant <= bound),
    }


def _run_submult_stable(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    factor = spec.params.get("factor", 1.05)
    rep1 = check_submultiplicative(ctx.weight, spec.radius)
    rep2 = check_submultiplicative(ctx.weight, 2 * spec.radius)
    growth = rep2.constant / rep1.constant
    return {
        "radius": spec.radius,
        "constant": rep1.constant,
        "constant_doubled": rep2.constant,
        "growth": growth,
        "witness": rep2.witness,
        "pass": math.isfinite(rep2.constant) and growth <= factor,
    }


def _run_weak_subadd(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    rep = check_weak_subadditive(ctx.weight, spec.radius)
    bound = spec.params.get("bound")
    return {
        "radius": rep.radius,
        "constant": rep.constant,
        "witness": rep.witness,
        "pass": bound is None or rep.constant <= bound,
    }


def _run_symmetric(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    ok = check_symmetric(ctx.weight, spec.radius)
    return {"radius": spec.radius, "pass": bool(ok)}


def _run_grs(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    group = ctx.cocycle.group
    s = spec.params.get("element")
    s = tuple(s) if s is not None else group.generators[-1]
    n_max = spec.params.get("n_max", 200)
    seq = check_grs(ctx.weight, s, n_max)
    bound = spec.params.get("max_final")
    final = float(seq[-1])
    return {
        "element": s,
        "final": final,
        "monotone_tail_decreasing": bool(np.all(np.diff(seq[n_max // 2 :]) <= 1e-12)),
        "pass": bound is None or final <= bound,
    }


def _run_lss(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    if ctx.weight is None or ctx.aux_weight is None:
        raise ValueError("lss needs weight (sigma) and weight2 (omega)")
    rep = check_lss_domination(ctx.weight, ctx.aux_weight, spec.radius)
    return {
        "radius": rep.radius,
        "constant": rep.constant,
        "witness": rep.witness,
        "pass": math.isfinite(rep.constant) and rep.constant >= 1.0,
    }


def _run_plemma(spec: CheckSpec) -> dict:
    p = spec.params
    res = analyze_p_function(p.get("beta", 1.0), p.get("gamma", 1.0), p.get("C", 1.0))
    return {
        "x0": res.x0,
        "M": res.m_const,
        "violations": res.violations,
        "pass": res.violations == 0,
    }


def _run_psi_series(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    rep = psi_membership_series(
        ctx.weight,
        ctx.pair,
        spec.params.get("N", 1.0),
        spec.params.get("n_max", 4096),
    )
    expect = spec.params.get("expect", "convergent")
    got = "convergent" if rep.converges else "divergent"
    return {
        "verdict": got,
        "expected": expect,
        "last_partial_sum": rep.partial_sums[-1],
        "block_ratios_tail": rep.block_ratios[-3:],
        "pass": got == expect,
    }


def _run_sandwich(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    rng = _rng(spec)
    group = ctx.cocycle.group
    slack = spec.params.get("slack", 1e-8)
    ok = True
    worst = math.inf
    for _ in range(spec.trials):
        f = random_supported_function(group, rng, radius=4)
        n = luxemburg_norm(f, ctx.pair.phi)
        o = orlicz_norm(f, ctx.pair)
        low = o - n * (1.0 - slack)
        high = 2.0 * n * (1.0 + slack) - o
        worst = min(worst, low, high)
        ok = ok and low >= 0 and high >= 0
    return {"trials": spec.trials, "worst_margin": worst, "pass": ok}


def _run_holder(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    rng = _rng(spec)
    group = ctx.cocycle.group
    ok = True
    worst = math.inf
    witness = None
    for _ in range(spec.trials):
        f = random_supported_function(group, rng, radius=4)
        v = random_supported_function(group, rng, radius=4)
        rep = dual_pairing_bound(f, v, ctx.pair)
        margin = rep["holder_bound"] - rep["pairing_l1"]
        if margin < worst:
            worst = margin
            witness = {"f": function_to_json(f), "v": function_to_json(v)}
        ok = ok and rep["holder_ok"] and rep["dual_certificate_ok"]
    return {"trials": spec.trials, "worst_margin": worst, "witness": witness, "pass": ok}


def _run_lambda_isometry(spec: CheckSpec) -> dict:
    ctx = _ctx(spec)
    if ctx.weight is None:
        raise ValueError("lambda-isometry needs a weight")
    rng = _rng(spec)
    group = ctx.cocycle.group
    tol = spec.params.get("tol", RESIDUAL_TOL)
    worst = 0.0
    from .orlicz import SpaceContext, lambda_map, weighted_norm

    for _ in range(spec.trials):
        f = random_supported_function(group, rng, radius=4)
        plain = orlicz_norm(f, ctx.pair)
        mapped = weighted_norm(lambda_map(f, ctx.weight), SpaceContext(ctx.pair, ctx.weight))
        worst = max(worst, abs(plain - mapped) / max(plain, 1e-300))
    return {"trials": spec.trials, "worst_relative_gap": worst, "pass": worst <= tol}


def _run_block_weight(spec: CheckSpec) -> dict:
    group = parse_group(spec.group)
    weight = parse_weight(group, spec.weight or "block:1,3,9,27,81")
    elems = ball_elements(group, len(group.identity))
    worst = -math.inf
    witness = None
    for s in elems:
        for t in elems:
            gap = weight(group.op(s, t)) - max(weight(s), weight(t))
            if gap > worst:
                worst, witness = gap, (s, t)
    return {"max_excess": worst, "witness": witness, "pass": worst <= 1e-12}


CHECK_RUNNERS = {
    "cocycle-verify": _run_cocycle_verify,
    "cocycle-polar": _run_cocycle_polar,
    "domination": _run_domination,
    "algebra-bound": _run_algebra_bound,
    "module-bound": _run_module_bound,
    "assoc": _run_assoc,
    "intertwine": _run_intertwine,
    "differential": _run_differential,
    "spectral": _run_spectral,
    "symmetry-finite": _run_symmetry_finite,
    "central-ext": _run_central_ext,
    "submult": _run_submult,
    "submult-stable": _run_submult_stable,
    "weak-subadd": _run_weak_subadd,
    "symmetric": _run_symmetric,
    "grs": _run_grs,
    "lss": _run_lss,
    "plemma": _run_plemma,
    "psi-series": _run_psi_series,
    "sandwich": _run_sandwich,
    "holder": _run_holder,
    "lambda-isometry": _run_lambda_isometry,
    "block-weight": _run_block_weight,
}

# Map from checker callables in the library modules to the CLI check names
# that exercise them; the registry test keeps this complete.
CHECKER_COVERAGE = {
    "weights.check_submultiplicative": ("submult", "submult-stable"),
    "weights.check_weak_subadditive": ("weak-subadd",),
    "weights.check_symmetric": ("symmetric",),
    "weights.check_grs": ("grs",),
    "weights.check_lss_domination": ("lss",),
    "weights.analyze_p_function": ("plemma",),
    "cocycles.verify_cocycle": ("cocycle-verify",),
    "cocycles.polar": ("cocycle-polar",),
    "cocycles.domination_from_subadditive": ("domination",),
    "cocycles.central_extension_embed": ("central-ext",),
    "orlicz.dual_pairing_bound": ("holder",),
    "orlicz.psi_membership_series": ("psi-series",),
    "orlicz.lambda_map": ("lambda-isometry",),
    "twisted.check_associativity": ("assoc",),
    "twisted.check_module_bound": ("module-bound",),
    "twisted.check_algebra_bound": ("algebra-bound",),
    "twisted.check_intertwining": ("intertwine",),
    "twisted.check_differential_bound": ("differential",),
    "twisted.spectral_radius_estimate": ("spectral",),
    "twisted.finite_symmetry_check": ("symmetry-finite",),
}


# ---------------------------------------------------------------------------
# Preset suites (named after the structural results they exercise)

SUITES = {
    "thm-orlicz-alg": [
        dict(check="cocycle-verify", group="Z^d:1", cocycle="cobound:poly:2", radius=8),
        dict(check="cocycle-polar", group="Z^d:1", cocycle="prod:cobound:poly:2*bichar:0.7", radius=5),
        dict(check="domination", group="Z^d:1", cocycle="cobound:poly:2", weight="poly:2", radius=20, params={"C": 4.0}),
        dict(check="module-bound", group="Z^d:2", cocycle="cobound:poly:2", weight="poly:2", trials=40, seed=11),
        dict(check="algebra-bound", group="Z^d:1", cocycle="cobound:poly:2", weight="poly:2", radius=20, trials=60, seed=12, params={"C": 4.0, "sample_radius": 4}),
        dict(check="assoc", group="Z^d:2", cocycle="bichar:1.0", trials=40, seed=13),
        dict(check="intertwine", group="Z^d:2", cocycle="prod:cobound:poly:1*bichar:0.5", weight="poly:1", trials=40, seed=14),
    ],
    "cor-poly-weight": [
        dict(check="weak-subadd", group="Z^d:1", weight="poly:2", radius=24, params={"bound": 4.0}),
        dict(check="psi-series", group="Z^d:1", pair="Lp:2", weight="poly:1", params={"n_max": 4096, "expect": "convergent"}),
        dict(check="sandwich", group="Z^d:2", pair="Lp:2", trials=60, seed=21),
        dict(check="holder", group="Z^d:2", pair="Lp:2", trials=60, seed=22),
        dict(check="lambda-isometry", group="Z^d:2", pair="Lp:2", weight="poly:2", trials=40, seed=23),
        dict(check="block-weight", group="Block:6", weight="block:1,3,9,27,81"),
    ],
    "lem-p-function": [
        dict(check="plemma", params={"beta": b, "gamma": g, "C": c})
        for b in (1.0, 2.0)
        for g in (1.0, 2.0)
        for c in (1.0, 2.0)
    ],
    "thm-subexp": [
        dict(check="submult", group="Z^d:1", weight="subexp:0.5:1", radius=16, params={"bound": 1.0 + 1e-9}),
        dict(check="lss", group="Z^d:1", weight="subexp:0.5:1", weight2="poly:25", radius=30),
        dict(check="submult", group="Z^d:1", weight="quot:subexp:0.5:1/poly:25", radius=30),
        dict(check="grs", group="Z^d:1", weight="subexp:0.5:1", params={"element": [1], "n_max": 400, "max_final": 1.4}),
        dict(check="differential", group="Z^d:1", pair="Lp:2", cocycle="bichar:0.9", weight="subexp:0.5:1", weight2="poly:25", radius=10, trials=30, seed=31, params={"sample_radius": 2}),
    ],
    "prop-quotient-weight": [
        dict(check="symmetric", group="Z^d:1", weight="quot:subexp2:1:1/poly:1", radius=30),
        dict(check="submult-stable", group="Z^d:1", weight="quot:subexp2:1:1/poly:1", radius=30, params={"factor": 1.05}),
        dict(check="grs", group="Z^d:1", weight="quot:subexp2:1:1/poly:1", params={"element": [1], "n_max": 400}),
    ],
    "sym-finite": [
        dict(check="symmetry-finite", group="Zn:4", cocycle="bichar:", trials=50, seed=41),
        dict(check="symmetry-finite", group="Zn:2x2", cocycle="bichar:3.141592653589793", trials=50, seed=42),
        dict(check="spectral", group="Zn:8", cocycle="bichar:", seed=43, params={"n_max": 48}),
    ],
    "central-ext": [
        dict(check="central-ext", group="Zn:4", cocycle="bichar:", params={"n": 4}),
        dict(check="central-ext", group="Zn:2x2", cocycle="bichar:3.141592653589793", params={"n": 2}),
    ],
}


def run_check(spec: CheckSpec) -> dict:
    runner = CHECK_RUNNERS.get(spec.check)
    if runner is None:
        raise ValueError(f"unknown check {spec.check!r}; known: {sorted(CHECK_RUNNERS)}")
    out = {"check": spec.check, "spec": asdict(spec)}
    out.update(_jsonable(runner(spec)))
    return out


def run_suite(name_or_specs, threads: int | None = None) -> Report:
    """Run a preset suite or an explicit CheckSpec list.

    Hard failures of prerequisite checks (cocycle validity, domination)
    short-circuit the dependent remainder of the suite.
    """
    if isinstance(name_or_specs, str):
        if name_or_specs not in SUITES:
            raise ValueError(f"unknown suite {name_or_specs!r}; presets: {sorted(SUITES)}")
        suite_name = name_or_specs
        specs = [CheckSpec.from_dict(d) for d in SUITES[name_or_specs]]
    else:
        suite_name = "custom"
        specs = [s if isinstance(s, CheckSpec) else CheckSpec.from_dict(s) for s in name_or_specs]

    if threads is None:
        threads = int(os.environ.get("TORLICZ_THREADS", "1"))

    # cocycle validity gates domination, which gates everything downstream
    gate_checks = {"cocycle-verify", "domination"}
    results: list[dict | None] = [None] * len(specs)
    gate_failed = False
    gate_order = [i for i, s in enumerate(specs) if s.check in gate_checks]
    rest = [i for i, s in enumerate(specs) if s.check not in gate_checks]
    for i in gate_order:
        if gate_failed:
            results[i] = {
                "check": specs[i].check,
                "spec": asdict(specs[i]),
                "skipped": "prerequisite check failed",
                "pass": False,
            }
            continue
        results[i] = run_check(specs[i])
        gate_failed = gate_failed or not results[i]["pass"]

    def _one(i: int) -> dict:
        if gate_failed:
            return {
                "check": specs[i].check,
                "spec": asdict(specs[i]),
                "skipped": "prerequisite check failed",
                "pass": False,
            }
        return run_check(specs[i])

    if threads > 1 and len(rest) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for i, res in zip(rest, pool.map(_one, rest)):
                results[i] = res
    else:
        for i in rest:
            results[i] = _one(i)

    passed = all(r["pass"] for r in results)
    env = {
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    return Report(
        suite=suite_name,
        spec=tuple(_jsonable(asdict(s)) for s in specs),
        results=tuple(results),
        environment=env,
        passed=passed,
    )


# ---------------------------------------------------------------------------
# Report emission


def emit_report(report: Report, fmt: str = "json") -> str:
    doc = {
        "suite": report.suite,
        "spec": list(report.spec),
        "results": list(report.results),
        "environment": report.environment,
        "pass": report.passed,
    }
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2, default=_jsonable)
    if fmt == "csv":
        import csv as _csv
        import io

        buf = io.StringIO()
        writer = _csv.writer(buf)
        writer.writerow(["suite", "check", "pass", "metric", "value", "witness"])
        for res in report.results:
            metric, value = _headline_metric(res)
            witness = (
                json.dumps(_jsonable(res.get("witness")), sort_keys=True)
                if res.get("witness") is not None
                else ""
            )
            writer.writerow([report.suite, res["check"], int(res["pass"]), metric, value, witness])
        return buf.getvalue()
    if fmt == "text":
        lines = [f"suite {report.suite}: {'PASS' if report.passed else 'FAIL'}"]
        for res in report.results:
            metric, value = _headline_metric(res)
            line = f"  [{'ok' if res['pass'] else 'FAIL'}] {res['check']}: {metric}={value}"
            lines.append(line)
            if not res["pass"] and res.get("witness") is not None:
                lines.append(f"        witness: {_jsonable(res['witness'])}")
            if not res["pass"] and res.get("error"):
                lines.append(f"        error: {res['error']}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def _headline_metric(res: dict) -> tuple:
    for key in (
        "identity_residual",
        "residual",
        "worst_residual",
        "worst_margin",
        "constant",
        "growth",
        "verdict",
        "x0",
        "final",
        "relative_gap",
        "worst_scaled_min_real",
        "worst_relative_gap",
        "max_excess",
        "reconstruction_residual",
        "algebra_constant",
        "skipped",
    ):
        if key in res:
            return key, res[key]
    return "pass", res["pass"]


# ---------------------------------------------------------------------------
# File I/O


def parse_function_file(path: str, group=None) -> SupportedFunction:
    """Load a finitely supported function from its JSON file form."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    try:
        return function_from_json(doc, group)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc


def save_function_file(f: SupportedFunction, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(function_to_json(f), fh, sort_keys=True, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# Entry point


def _cmd_norm(args) -> int:
    pair = parse_pair(args.pair)
    f = parse_function_file(args.infile)
    out = {
        "modular": modular(f, pair.phi),
        "luxemburg": luxemburg_norm(f, pair.phi),
        "orlicz": orlicz_norm(f, pair),
        "l1": l1_norm(f),
    }
    if args.weight:
        w = parse_weight(f.group, args.weight)
        out["weighted_orlicz"] = orlicz_norm(f.mul_pointwise(w), pair)
        out["weighted_l1"] = weighted_l1_norm(f, w)
    print(json.dumps(_jsonable(out), sort_keys=True, indent=2))
    return 0


def _cmd_conv(args) -> int:
    f = parse_function_file(args.infiles[0])
    g = parse_function_file(args.infiles[1], f.group)
    omega = parse_cocycle(f.group, args.cocycle)
    h = twisted_convolve(f, g, omega)
    if args.out:
        save_function_file(h, args.out)
    else:
        print(json.dumps(_jsonable(function_to_json(h)), sort_keys=True, indent=2))
    return 0


def _cmd_growth(args) -> int:
    group = parse_group(args.group)
    sizes = ball_sizes(group, args.nmax)
    fit = growth_degree_estimate(sizes)
    print(json.dumps(
        {"group": group.name, "sizes": sizes, "degree": fit.degree, "residual": fit.residual,
         "window": list(fit.window)},
        sort_keys=True, indent=2,
    ))
    return 0


def _cmd_plemma(args) -> int:
    res = analyze_p_function(args.beta, args.gamma, args.C)
    print(json.dumps(
        {"beta": args.beta, "gamma": args.gamma, "C": args.C, "x0": res.x0,
         "M": res.m_const, "violations": res.violations},
        sort_keys=True, indent=2,
    ))
    return 0 if res.violations == 0 else 1


def _cmd_check(args) -> int:
    params = json.loads(args.params) if args.params else {}
    spec = CheckSpec(
        check=args.name,
        group=args.group,
        pair=args.pair,
        weight=args.weight,
        weight2=args.weight2,
        cocycle=args.cocycle,
        radius=args.radius,
        trials=args.trials,
        seed=args.seed,
        params=params,
    )
    res = run_check(spec)
    print(json.dumps(_jsonable(res), sort_keys=True, indent=2))
    return 0 if res["pass"] else 1


def _cmd_suite(args) -> int:
    if args.name in SUITES:
        report = run_suite(args.name)
    else:
        with open(args.name, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        specs = doc["checks"] if isinstance(doc, dict) else doc
        report = run_suite([CheckSpec.from_dict(d) for d in specs])
    text = emit_report(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text)
    return 0 if report.passed else 1


def _cmd_report(args) -> int:
    with open(args.infile, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    report = Report(
        suite=doc["suite"],
        spec=tuple(doc["spec"]),
        results=tuple(doc["results"]),
        environment=doc["environment"],
        passed=doc["pass"],
    )
    print(emit_report(report, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="torlicz", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="norms of a function file")
    p.add_argument("--pair", default="Lp:2")
    p.add_argument("--weight", default=None)
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(fn=_cmd_norm)

    p = sub.add_parser("conv", help="twisted convolution of two function files")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--in", dest="infiles", nargs=2, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_conv)

    p = sub.add_parser("growth", help="ball sizes and growth degree")
    p.add_argument("--group", required=True)
    p.add_argument("--nmax", type=int, default=12)
    p.set_defaults(fn=_cmd_growth)

    p = sub.add_parser("plemma", help="analyze the concave-difference p function")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--C", type=float, required=True)
    p.set_defaults(fn=_cmd_plemma)

    p = sub.add_parser("check", help="run one named check")
    p.add_argument("name")
    p.add_argument("--group", default="Z^d:1")
    p.add_argument("--pair", default="Lp:2")
    p.add_argument("--weight", default=None)
    p.add_argument("--weight2", default=None)
    p.add_argument("--cocycle", default=None)
    p.add_argument("--radius", type=int, default=8)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--params", default=None, help="JSON dict of extra parameters")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("suite", help="run a preset suite or a JSON spec file")
    p.add_argument("name")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_suite)

    p = sub.add_parser("report", help="re-emit a saved JSON report")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.set_defaults(fn=_cmd_report)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except BudgetError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
