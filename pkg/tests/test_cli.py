import json

import pytest

from torlicz.cli import (
    CHECK_RUNNERS,
    CHECKER_COVERAGE,
    CheckSpec,
    SUITES,
    emit_report,
    main,
    parse_function_file,
    run_check,
    run_suite,
    save_function_file,
)
from torlicz.groups import integer_lattice
from torlicz.orlicz import SupportedFunction


def write_json(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


DELTA_DOC = {"group": "Z^d:2", "support": [{"elt": [0, 0], "re": 1.0, "im": 0.0}]}


def test_parse_function_file_point_mass(tmp_path):
    f = parse_function_file(write_json(tmp_path, "f.json", DELTA_DOC))
    assert f.values == {(0, 0): 1.0 + 0.0j}
    assert f.group.name == "Z^d:2"


def test_parse_function_file_empty_support(tmp_path):
    f = parse_function_file(write_json(tmp_path, "z.json", {"group": "Z^d:1", "support": []}))
    assert f.is_zero()


def test_parse_function_file_duplicate_rejected(tmp_path):
    doc = {
        "group": "Z^d:1",
        "support": [
            {"elt": [2], "re": 1.0, "im": 0.0},
            {"elt": [2], "re": 0.5, "im": 0.0},
        ],
    }
    with pytest.raises(ValueError, match="indices 0 and 1"):
        parse_function_file(write_json(tmp_path, "d.json", doc))


def test_parse_function_file_zero_entry_rejected(tmp_path):
    doc = {"group": "Z^d:1", "support": [{"elt": [1], "re": 0.0, "im": 0.0}]}
    with pytest.raises(ValueError, match="zero-value"):
        parse_function_file(write_json(tmp_path, "z.json", doc))


def test_parse_function_file_group_mismatch(tmp_path):
    path = write_json(tmp_path, "f.json", DELTA_DOC)
    with pytest.raises(ValueError, match="mismatch"):
        parse_function_file(path, integer_lattice(1))


def test_parse_function_file_bad_json_line_context(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"group": "Z^d:1",\n  "support": [}')
    with pytest.raises(ValueError, match="line 2"):
        parse_function_file(str(path))


def test_save_and_reload(tmp_path):
    f = SupportedFunction(integer_lattice(2), {(1, -2): 0.5 - 1.5j})
    path = str(tmp_path / "g.json")
    save_function_file(f, path)
    assert parse_function_file(path).values == f.values


def test_cmd_norm(tmp_path, capsys):
    path = write_json(tmp_path, "f.json", DELTA_DOC)
    assert main(["norm", "--pair", "Lp:2", "--weight", "poly:2", "--in", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["luxemburg"] == pytest.approx(0.7071067811865476, rel=1e-9)
    assert out["orlicz"] == pytest.approx(1.4142135623730951, rel=1e-9)
    assert out["weighted_orlicz"] == pytest.approx(out["orlicz"], rel=1e-9)


def test_cmd_conv(tmp_path, capsys):
    f = write_json(
        tmp_path, "f.json", {"group": "Z^d:2", "support": [{"elt": [0, 1], "re": 1.0, "im": 0.0}]}
    )
    g = write_json(
        tmp_path, "g.json", {"group": "Z^d:2", "support": [{"elt": [1, 0], "re": 1.0, "im": 0.0}]}
    )
    out_path = str(tmp_path / "h.json")
    assert main(["conv", "--cocycle", "bichar:3.141592653589793", "--in", f, g, "--out", out_path]) == 0
    h = parse_function_file(out_path)
    assert h.values[(1, 1)] == pytest.approx(-1.0)


def test_cmd_growth(capsys):
    assert main(["growth", "--group", "Z^d:2", "--nmax", "8"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["sizes"] == [(2 * n + 1) ** 2 for n in range(1, 9)]


def test_cmd_plemma(capsys):
    assert main(["plemma", "--beta", "1", "--gamma", "1", "--C", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["violations"] == 0 and out["x0"] > 0


def test_cmd_check_pass_and_fail(capsys):
    assert main(["check", "submult", "--weight", "poly:2", "--radius", "10"]) == 0
    capsys.readouterr()
    # expecting divergence from a convergent series must fail with exit 1
    rc = main(
        [
            "check",
            "psi-series",
            "--group",
            "Z^d:1",
            "--pair",
            "Lp:2",
            "--weight",
            "poly:1",
            "--params",
            '{"expect": "divergent", "n_max": 512}',
        ]
    )
    assert rc == 1


def test_cmd_check_unknown_name():
    assert main(["check", "nonsense"]) == 2


def test_cmd_suite_preset_and_report_formats(tmp_path, capsys):
    out_path = str(tmp_path / "report.json")
    assert main(["suite", "central-ext", "--out", out_path]) == 0
    doc = json.loads(open(out_path).read())
    assert doc["pass"] is True
    capsys.readouterr()
    assert main(["report", "--in", out_path, "--format", "csv"]) == 0
    csv_text = capsys.readouterr().out
    lines = [l for l in csv_text.strip().splitlines() if l]
    assert lines[0].startswith("suite,check,pass")
    assert len(lines) == 1 + len(doc["results"])


def test_cmd_suite_from_file(tmp_path):
    spec = {
        "checks": [
            {"check": "submult", "group": "Z^d:1", "weight": "poly:1", "radius": 8},
            {"check": "symmetric", "group": "Z^d:1", "weight": "poly:1", "radius": 8},
        ]
    }
    path = write_json(tmp_path, "suite.json", spec)
    assert main(["suite", path, "--format", "text"]) == 0


def test_suite_gate_short_circuits():
    specs = [
        CheckSpec(
            check="domination",
            group="Z^d:1",
            cocycle="cobound:poly:2",
            weight="poly:2",
            radius=8,
            params={"C": 0.01},  # far too small, the bound must fail
        ),
        CheckSpec(check="sandwich", group="Z^d:1", trials=5),
    ]
    report = run_suite(specs)
    assert not report.passed
    assert report.results[0]["pass"] is False
    assert report.results[1].get("skipped")


def test_suite_fails_when_weight_decays_too_slowly():
    # on Z with a quadratic Young complement the membership series needs
    # beta > 1/2; beta = 0.2 must be flagged divergent and fail the suite
    spec = CheckSpec(
        check="psi-series",
        group="Z^d:1",
        pair="Lp:2",
        weight="poly:0.2",
        params={"expect": "convergent", "n_max": 2048},
    )
    report = run_suite([spec])
    assert not report.passed
    assert report.results[0]["verdict"] == "divergent"


def test_empty_suite_trivially_passes():
    report = run_suite([])
    assert report.passed
    assert report.results == ()


def test_text_report_includes_witness_on_failure():
    spec = CheckSpec(
        check="psi-series",
        group="Z^d:1",
        pair="Lp:2",
        weight="poly:1",
        params={"expect": "divergent", "n_max": 512},
    )
    report = run_suite([spec])
    text = emit_report(report, "text")
    assert "FAIL" in text
    assert "verdict" in text
    json_text = emit_report(report, "json")
    assert json.loads(json_text)["pass"] is False


def test_all_presets_pass():
    for name in SUITES:
        report = run_suite(name)
        assert report.passed, emit_report(report, "text")


def test_report_json_round_trip_eq():
    report = run_suite("lem-p-function")
    doc = json.loads(emit_report(report, "json"))
    assert doc["suite"] == "lem-p-function"
    assert all(r["pass"] for r in doc["results"])


def test_registry_every_checker_reachable_from_a_suite():
    import torlicz.cocycles as cocycles
    import torlicz.orlicz as orlicz
    import torlicz.twisted as twisted
    import torlicz.weights as weights

    modules = {"weights": weights, "cocycles": cocycles, "orlicz": orlicz, "twisted": twisted}
    used_checks = {d["check"] for suite in SUITES.values() for d in suite}
    for qualname, check_names in CHECKER_COVERAGE.items():
        mod_name, fn_name = qualname.split(".")
        assert hasattr(modules[mod_name], fn_name), qualname
        assert any(c in used_checks for c in check_names), f"{qualname} unreachable"
        for c in check_names:
            assert c in CHECK_RUNNERS
    # and the coverage table itself lists every public checker-style callable
    expected = {
        f"{m}.{n}"
        for m, mod in modules.items()
        for n in dir(mod)
        if n.startswith(("check_", "verify_", "analyze_"))
        and getattr(getattr(mod, n), "__module__", "") == f"torlicz.{m}"
    }
    assert expected <= set(CHECKER_COVERAGE)


def test_checkspec_rejects_unknown_fields():
    with pytest.raises(ValueError, match="unknown CheckSpec fields"):
        CheckSpec.from_dict({"check": "sandwich", "tolerance": 1})


def test_run_check_unknown():
    with pytest.raises(ValueError):
        run_check(CheckSpec(check="nope"))


def test_suite_determinism_modulo_timestamp():
    docs = []
    for _ in range(2):
        report = run_suite("thm-subexp")
        doc = json.loads(emit_report(report, "json"))
        doc["environment"].pop("timestamp")
        docs.append(json.dumps(doc, sort_keys=True))
    assert docs[0] == docs[1]


def test_threaded_suite_matches_sequential(monkeypatch):
    seq = run_suite("cor-poly-weight", threads=1)
    par = run_suite("cor-poly-weight", threads=4)
    a = json.loads(emit_report(seq, "json"))
    b = json.loads(emit_report(par, "json"))
    a["environment"].pop("timestamp")
    b["environment"].pop("timestamp")
    assert a == b
