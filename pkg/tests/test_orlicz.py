import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torlicz.groups import cyclic_group, integer_lattice
from torlicz.orlicz import (
    GroupMismatchError,
    SpaceContext,
    SupportedFunction,
    delta,
    dual_pairing_bound,
    function_from_json,
    function_to_json,
    indicator,
    l1_norm,
    lambda_map,
    luxemburg_norm,
    modular,
    orlicz_norm,
    psi_membership_series,
    random_supported_function,
    weighted_l1_norm,
    weighted_norm,
)
from torlicz.weights import constant_weight, make_poly_weight
from torlicz.young import YoungPair, builtin_pairs, lp_pair, l1_pair, parse_pair, young_function

Z1 = integer_lattice(1)
Z2 = integer_lattice(2)
P2 = lp_pair(2.0)


def test_zero_values_dropped():
    f = SupportedFunction(Z1, {(0,): 0.0, (1,): 2.0})
    assert set(f.support) == {(1,)}
    assert SupportedFunction(Z1, {}).is_zero()


def test_support_elements_canonicalized():
    g4 = cyclic_group(4)
    f = SupportedFunction(g4, {(7,): 1.0, (3,): 2.0})
    assert f.values == {(3,): 3.0 + 0.0j}


def test_modular_values():
    assert modular(SupportedFunction(Z1, {}), P2.phi) == 0.0
    assert modular(delta(Z1), P2.phi) == pytest.approx(0.5)
    ball = indicator(Z1, [(-1,), (0,), (1,)])
    assert modular(ball, P2.phi) == pytest.approx(3 * P2.phi(1.0))


def test_luxemburg_point_mass():
    assert luxemburg_norm(delta(Z1), P2.phi) == pytest.approx(1 / math.sqrt(2), abs=1e-11)
    assert luxemburg_norm(SupportedFunction(Z1, {}), P2.phi) == 0.0


def test_luxemburg_indicator_closed_form():
    f = indicator(Z1, [(k,) for k in range(4)])
    assert luxemburg_norm(f, P2.phi) == pytest.approx((4 / 2) ** 0.5, abs=1e-10)
    p3 = lp_pair(3.0)
    g = indicator(Z1, [(k,) for k in range(9)])
    assert luxemburg_norm(g, p3.phi) == pytest.approx(3.0 ** (1 / 3), abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False))
def test_luxemburg_absolute_homogeneity(c):
    f = SupportedFunction(Z1, {(0,): 1.0 + 0.5j, (2,): -0.75j})
    lhs = luxemburg_norm(f.scale(c), P2.phi)
    rhs = abs(c) * luxemburg_norm(f, P2.phi)
    assert lhs == pytest.approx(rhs, rel=1e-9)


def test_luxemburg_boundary_characterization():
    rng = np.random.default_rng(3)
    for pair in (P2, parse_pair("expm"), parse_pair("xlog")):
        f = random_supported_function(Z1, rng)
        n = luxemburg_norm(f, pair.phi)
        g = f.scale(1.0 / n)
        # N(f) <= 1 iff modular(f) <= 1, probed on both sides of the boundary
        assert luxemburg_norm(g, pair.phi) == pytest.approx(1.0, abs=1e-9)
        assert modular(g, pair.phi) <= 1.0 + 1e-9
        shrunk = g.scale(0.9)
        assert modular(shrunk, pair.phi) <= 1.0
        assert luxemburg_norm(shrunk, pair.phi) <= 1.0
        grown = g.scale(1.5)
        assert modular(grown, pair.phi) > 1.0
        assert luxemburg_norm(grown, pair.phi) > 1.0


def test_orlicz_norm_point_mass_amemiya():
    assert orlicz_norm(delta(Z1), P2) == pytest.approx(math.sqrt(2), abs=1e-10)
    assert orlicz_norm(SupportedFunction(Z1, {}), P2) == 0.0


def test_orlicz_norm_linear_case_is_l1():
    pair = l1_pair()
    rng = np.random.default_rng(5)
    for _ in range(25):
        f = random_supported_function(Z2, rng)
        assert orlicz_norm(f, pair) == pytest.approx(l1_norm(f), rel=1e-10)


def test_norm_sandwich_random():
    rng = np.random.default_rng(11)
    for pair in builtin_pairs():
        for _ in range(10):
            f = random_supported_function(Z2, rng)
            n = luxemburg_norm(f, pair.phi)
            o = orlicz_norm(f, pair)
            assert n <= o * (1 + 1e-8)
            assert o <= 2 * n * (1 + 1e-8)


def test_norm_axioms_random():
    rng = np.random.default_rng(13)
    for _ in range(20):
        f = random_supported_function(Z2, rng)
        g = random_supported_function(Z2, rng)
        assert orlicz_norm(f.add(g), P2) <= orlicz_norm(f, P2) + orlicz_norm(g, P2) + 1e-9
        assert luxemburg_norm(f.add(g), P2.phi) <= (
            luxemburg_norm(f, P2.phi) + luxemburg_norm(g, P2.phi) + 1e-9
        )
        assert orlicz_norm(f, P2) > 0
    assert orlicz_norm(f.sub(f), P2) == 0.0


def test_dual_pairing_tight_point_mass():
    rep = dual_pairing_bound(delta(Z1), delta(Z1), P2)
    assert rep["pairing_l1"] == pytest.approx(1.0)
    assert rep["holder_bound"] == pytest.approx(1.0, rel=1e-9)
    assert rep["holder_ok"] and rep["dual_certificate_ok"]


def test_dual_pairing_zero_function():
    rep = dual_pairing_bound(delta(Z1), SupportedFunction(Z1, {}), P2)
    assert rep["pairing_l1"] == 0.0
    assert rep["holder_ok"]


def test_dual_pairing_random_all_pairs():
    rng = np.random.default_rng(17)
    for pair in (P2, lp_pair(1.5), parse_pair("entropy"), l1_pair()):
        for _ in range(25):
            f = random_supported_function(Z2, rng)
            v = random_supported_function(Z2, rng)
            rep = dual_pairing_bound(f, v, pair)
            assert rep["holder_ok"], rep
            assert rep["dual_certificate_ok"], rep


def test_dual_pairing_numeric_complements():
    rng = np.random.default_rng(19)
    for spec in ("xlog", "cosh"):
        pair = parse_pair(spec)
        for _ in range(5):
            f = random_supported_function(Z1, rng, max_support=3)
            v = random_supported_function(Z1, rng, max_support=3)
            rep = dual_pairing_bound(f, v, pair)
            assert rep["holder_ok"] and rep["dual_certificate_ok"]


def test_weighted_norm_point_masses():
    w = make_poly_weight(Z1, 2.0)
    ctx = SpaceContext(P2, w)
    assert weighted_norm(delta(Z1), ctx) == pytest.approx(math.sqrt(2), abs=1e-10)
    s = (3,)
    assert weighted_norm(delta(Z1, s), ctx) == pytest.approx(w(s) * math.sqrt(2), rel=1e-10)
    assert weighted_norm(delta(Z1, s), SpaceContext(P2, constant_weight(Z1))) == pytest.approx(
        math.sqrt(2), rel=1e-10
    )


def test_lambda_map_identity_and_point_mass():
    w = make_poly_weight(Z1, 1.0)
    f = SupportedFunction(Z1, {(2,): 3.0})
    assert lambda_map(f, constant_weight(Z1)).values == f.values
    assert lambda_map(delta(Z1, (2,)), w).values[(2,)] == pytest.approx(1.0 / 3.0)


def test_lambda_map_isometry():
    w = make_poly_weight(Z1, 2.0)
    ctx = SpaceContext(P2, w)
    rng = np.random.default_rng(23)
    for _ in range(25):
        f = random_supported_function(Z1, rng)
        assert weighted_norm(lambda_map(f, w), ctx) == pytest.approx(
            orlicz_norm(f, P2), rel=1e-10
        )


def test_weighted_l1():
    w = make_poly_weight(Z1, 1.0)
    f = SupportedFunction(Z1, {(0,): 1.0, (2,): -2.0})
    assert weighted_l1_norm(f, w) == pytest.approx(1.0 + 2.0 * 3.0)


def test_psi_series_convergent_beta_above_threshold():
    w = make_poly_weight(Z1, 1.0)
    rep = psi_membership_series(w, P2, 1.0, 2048)
    assert rep.converges
    assert rep.block_ratios[-1] == pytest.approx(0.5, abs=0.05)


def test_psi_series_divergent_harmonic():
    w = make_poly_weight(Z1, 1.0)
    linear_pair = YoungPair(
        name="linear-psi",
        phi=l1_pair().psi,  # the 0/inf complement of the identity map
        psi=young_function("y", lambda y: y),
    )
    rep = psi_membership_series(w, linear_pair, 1.0, 2048)
    assert not rep.converges


def test_psi_series_finite_group_terminates():
    w = constant_weight(cyclic_group(5))
    rep = psi_membership_series(w, P2, 1.0, 64)
    assert rep.converges
    assert rep.partial_sums[-1] == pytest.approx(5 * P2.psi(1.0))


def test_group_mismatch_rejected():
    f = delta(Z1)
    g = delta(Z2)
    with pytest.raises(GroupMismatchError):
        f.add(g)


def test_function_json_round_trip():
    f = SupportedFunction(Z2, {(0, 0): 1 + 2j, (3, -1): -0.5j})
    doc = function_to_json(f)
    g = function_from_json(doc)
    assert g.values == f.values
    assert g.group.name == "Z^d:2"


def test_random_function_deterministic():
    a = random_supported_function(Z2, np.random.default_rng(99))
    b = random_supported_function(Z2, np.random.default_rng(99))
    assert a.values == b.values
