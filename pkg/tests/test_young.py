import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torlicz.young import (
    YoungFunctionError,
    builtin_pairs,
    check_delta2,
    check_strong_equivalence,
    conjugate,
    conjugate_function,
    entropy_pair,
    estimate_l,
    expm_pair,
    l1_pair,
    lp_pair,
    parse_pair,
    piecewise_linear_young,
    xlog_pair,
    young_function,
)

EXPM_CONJ_AT_1 = 2.0 * math.log(2.0) - 1.0  # (1+y)ln(1+y)-y at y=1


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_conjugate_of_power_matches_dual_power(p):
    pair = lp_pair(p)
    q = p / (p - 1.0)
    for y in np.linspace(0.01, 20.0, 40):
        expected = y**q / q
        got = conjugate(pair.phi, float(y))
        assert abs(got - expected) <= 1e-8 * (1.0 + expected)


def test_conjugate_of_linear_jumps_to_infinity():
    pair = l1_pair()
    assert conjugate(pair.phi, 0.5) == 0.0
    assert conjugate(pair.phi, 1.0) == 0.0
    assert conjugate(pair.phi, 2.0) == math.inf
    # and the analytic complement stored on the pair agrees
    assert pair.psi(0.7) == 0.0
    assert pair.psi(1.0) == 0.0
    assert math.isinf(pair.psi(1.2))


def test_conjugate_of_exponential_pair_value():
    pair = expm_pair()
    assert conjugate(pair.phi, 1.0) == pytest.approx(EXPM_CONJ_AT_1, rel=1e-9)
    assert pair.psi(1.0) == pytest.approx(EXPM_CONJ_AT_1, rel=1e-12)


@pytest.mark.parametrize("pair_fn", [expm_pair, entropy_pair, l1_pair])
def test_numeric_conjugate_matches_analytic_complement(pair_fn):
    pair = pair_fn()
    for y in np.geomspace(0.05, 8.0, 25):
        expected = pair.psi(float(y))
        if not math.isfinite(expected):
            continue
        got = conjugate(pair.phi, float(y))
        assert abs(got - expected) <= 1e-8 * (1.0 + abs(expected))


def test_conjugate_rejects_bad_input():
    pair = lp_pair(2.0)
    with pytest.raises(ValueError):
        conjugate(pair.phi, float("nan"))
    with pytest.raises(ValueError):
        conjugate(pair.phi, -1.0)
    assert conjugate(pair.phi, 0.0) == 0.0


def test_double_conjugation_recovers_phi():
    pair = lp_pair(2.0)
    psi_num = conjugate_function(pair.phi)
    for x in np.geomspace(0.05, 8.0, 12):
        back = conjugate(psi_num, float(x))
        assert back == pytest.approx(pair.phi(float(x)), rel=1e-7, abs=1e-10)


def test_double_conjugation_through_infinite_complement():
    pair = l1_pair()
    # conjugating the 0/inf step function gives back the identity map
    for x in (0.25, 1.0, 3.0):
        assert conjugate(pair.psi, x) == pytest.approx(x, rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(0, 7),
    st.floats(0.0, 30.0),
    st.floats(0.0, 30.0),
)
def test_young_inequality_all_builtin_pairs(idx, x, y):
    pair = builtin_pairs()[idx]
    lhs = x * y
    rhs = pair.phi(x) + pair.psi(y)
    assert lhs <= rhs + 1e-9 * (1.0 + abs(rhs) if math.isfinite(rhs) else 0.0) or rhs == math.inf


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_young_equality_at_gradient(p):
    pair = lp_pair(p)
    for x in (0.3, 1.0, 2.7):
        y = x ** (p - 1.0)  # derivative of x^p/p
        gap = pair.phi(x) + pair.psi(y) - x * y
        assert -1e-12 <= gap <= 1e-9


def test_numeric_conjugate_is_young_on_samples():
    psi = conjugate_function(xlog_pair().phi)
    assert psi(0.0) == 0.0
    ys = np.geomspace(1e-3, 10.0, 15)
    vals = [psi(float(y)) for y in ys]
    assert all(b >= a for a, b in zip(vals, vals[1:]))
    for a, c in zip(ys, ys[2:]):
        mid = 0.5 * (a + c)
        assert psi(float(mid)) <= 0.5 * (psi(float(a)) + psi(float(c))) + 1e-9


def test_delta2_constants():
    assert check_delta2(l1_pair().phi) == (pytest.approx(2.0), 0.0)
    k, _ = check_delta2(lp_pair(2.0).phi)
    assert k == pytest.approx(4.0, rel=1e-9)
    k, _ = check_delta2(lp_pair(3.0).phi)
    assert k == pytest.approx(8.0, rel=1e-9)


def test_delta2_absent_for_exponential_growth():
    assert check_delta2(expm_pair().phi) is None
    assert check_delta2(parse_pair("cosh").phi) is None
    # x ln(1+x) and its entropy cousin stay doubling-bounded
    assert check_delta2(xlog_pair().phi) is not None
    assert check_delta2(entropy_pair().phi) is not None


def test_delta2_requires_finite_function():
    with pytest.raises(ValueError):
        check_delta2(l1_pair().psi)


def test_estimate_l_on_builtins():
    assert estimate_l(lp_pair(2.0).psi) == 2.0
    assert estimate_l(lp_pair(3.0).psi) == 1.5  # dual exponent q = 1.5
    assert estimate_l(young_function("y", lambda y: y)) == 1.0
    cosh_m1 = parse_pair("cosh").phi
    assert estimate_l(cosh_m1) == 2.0
    assert estimate_l(expm_pair().psi) == 2.0  # entropy complement is quadratic at 0
    # numeric complements keep the quadratic behaviour near zero
    assert estimate_l(xlog_pair().psi) == 2.0
    # the 0/inf complement of x vanishes near 0, so every grid exponent works
    assert estimate_l(l1_pair().psi) == 4.0


def test_strong_equivalence_self_is_unit_window():
    psi = lp_pair(2.0).psi
    assert check_strong_equivalence(psi, psi) == (1.0, 1.0)


def test_strong_equivalence_xlog_vs_entropy():
    found = check_strong_equivalence(xlog_pair().phi, entropy_pair().phi)
    assert found is not None
    a, b = found
    # independent verification of the returned witnesses on a finer grid
    f1, f2 = xlog_pair().phi, entropy_pair().phi
    for x in np.geomspace(5e-4, 5e3, 301):
        assert f1(float(a * x)) <= f2(float(x)) * (1 + 1e-12)
        assert f2(float(x)) <= f1(float(b * x)) * (1 + 1e-12)


def test_strong_equivalence_absent_for_different_powers():
    one = young_function("y", lambda y: y)
    two = young_function("y^2", lambda y: y * y)
    assert check_strong_equivalence(one, two) is None


def test_piecewise_linear_young():
    phi = piecewise_linear_young([(0, 0), (1, 0.5), (2, 2.0), (3, 4.5)])
    assert phi(0.0) == 0.0
    assert phi(1.5) == pytest.approx(1.25)
    assert phi(5.0) == pytest.approx(4.5 + 2.5 * 2)  # last slope extrapolation
    with pytest.raises(YoungFunctionError):
        piecewise_linear_young([(0, 0), (1, 2.0), (2, 3.0)])  # slopes decrease
    with pytest.raises(YoungFunctionError):
        piecewise_linear_young([(0, 1), (1, 2)])  # does not start at 0
    with pytest.raises(YoungFunctionError):
        piecewise_linear_young([(0, 0), (1, 0.0)])  # flat tail never reaches inf


def test_young_validation_rejects_nonconvex():
    with pytest.raises(YoungFunctionError):
        young_function("sqrt", math.sqrt)
    with pytest.raises(YoungFunctionError):
        young_function("shift", lambda x: x + 1.0)


def test_parse_pair_specs():
    assert parse_pair("Lp:2.5").name == "Lp:2.5"
    assert parse_pair("L1").name == "L1"
    for name in ("xlog", "cosh", "expm", "entropy"):
        assert parse_pair(name).name == name
    with pytest.raises(ValueError):
        parse_pair("L0")


def test_parse_pair_piecewise_table(tmp_path):
    import json

    path = tmp_path / "phi.json"
    path.write_text(json.dumps({"name": "hinge", "points": [[0, 0], [1, 0.5], [2, 2.0]]}))
    pair = parse_pair(f"pw:{path}")
    assert pair.phi(1.0) == pytest.approx(0.5)
    assert not pair.analytic_complement
    # conjugate of a piecewise-linear function is finite below the top slope
    assert math.isfinite(pair.psi(1.0))
    assert pair.phi(0.5) + pair.psi(0.5) >= 0.25 - 1e-12  # Young inequality spot check
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([[0, 0], [1, 2.0], [2, 3.0]]))
    with pytest.raises(YoungFunctionError):
        parse_pair(f"pw:{bad}")
