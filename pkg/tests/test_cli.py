"""End-to-end CLI checks through subprocesses.

Exit status contract: 0 all checks passed, 1 a mathematical check failed
(with a counterexample in the JSON), 2 unusable input.  Output must be
byte-identical across runs with the same inputs and seed.
"""

import json
import subprocess
import sys

import pytest

from ordalg.cli import main

CHAIN2 = {"elements": ["p", "q"], "leq": [["p", "q"]]}
LOOP = {"elements": ["p", "q"], "leq": [["p", "q"], ["q", "p"]]}
F01 = {"carrier": ["p", "q"], "values": {"p": "0", "q": "1"}}
F10 = {"carrier": ["p", "q"], "values": {"p": "1", "q": "0"}}
SKEL = {"quasiorder": CHAIN2}
GENS = {"generators": [F01]}
R2_ZERO = {"carrier": ["x", "y"], "values": {"x": "0", "y": "0"}}
R2_ONE = {"carrier": ["x", "y"], "values": {"x": "1", "y": "1"}}
R2_UP = {"carrier": ["x", "y"], "values": {"x": "0", "y": "1"}}
R2_DOWN = {"carrier": ["x", "y"], "values": {"x": "1", "y": "0"}}


def run(*args):
    return subprocess.run([sys.executable, "-m", "ordalg.cli", *args],
                          capture_output=True, text=True)


def payload(stdout: str) -> dict:
    lines = stdout.splitlines()
    return json.loads("\n".join(lines[lines.index("{"):]))


@pytest.fixture
def docs(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj), encoding="utf-8")
        return str(path)
    return write


def test_validate_poset(docs):
    res = run("validate", "--poset", docs("chain2.json", CHAIN2))
    assert res.returncode == 0
    assert "validate: PASS" in res.stdout
    assert payload(res.stdout)["antisymmetric"] is True


def test_validate_quasi_order(docs):
    path = docs("loop.json", LOOP)
    res = run("validate", "--poset", path)
    assert res.returncode == 1
    assert "FAIL" in res.stdout
    assert payload(res.stdout)["counterexample"]["pair"] == ["p", "q"]
    res = run("validate", "--poset", path, "--expect-quasi")
    assert res.returncode == 0
    assert "order-equivalent" in res.stdout


def test_axioms_r2_all_listed():
    res = run("axioms", "--oracle", "r2", "--samples", "500", "--seed", "42")
    assert res.returncode == 0
    for name in ("P1", "P2", "P3", "P4", "P5", "RP5", "P6", "P7", "P8", "P9"):
        assert f"{name}: PASS" in res.stdout
    for k in range(1, 10):
        assert f"S{k}: PASS" in res.stdout
    assert res.stdout.rstrip().splitlines()[-1] == "}"
    assert "axioms: PASS" in res.stdout


def test_devries_counterexamples_do_not_gate(docs):
    res = run("axioms", "--skeleton", docs("skel.json", SKEL), "--devries")
    assert res.returncode == 0
    assert "P11: counterexample found" in res.stdout
    assert "P12: counterexample found" in res.stdout
    assert "axioms: PASS" in res.stdout


def test_devries_on_r2():
    # max(a) <= min(b) is negation-symmetric, so P11 holds; P12 fails
    # (nothing positive sits totally below the peak (1, 0)).
    res = run("axioms", "--oracle", "r2", "--devries", "--samples", "300")
    assert res.returncode == 0
    assert "P11: holds" in res.stdout
    assert "P12: counterexample found" in res.stdout


def test_spectrum_rejects_poset_flag(docs):
    res = run("spectrum", "--poset", docs("chain2.json", CHAIN2))
    assert res.returncode == 2


def test_spectrum_r2():
    res = run("spectrum", "--oracle", "r2")
    assert res.returncode == 0
    assert len(payload(res.stdout)["points"]) == 2


def test_induced_order_r2_collapses():
    res = run("induced-order", "--oracle", "r2")
    assert res.returncode == 1
    assert "order fails antisymmetry" in res.stdout
    res = run("induced-order", "--oracle", "r2", "--expect-quasi")
    assert res.returncode == 0
    body = payload(res.stdout)
    assert body["counterexample"]["note"] == "order fails antisymmetry"
    assert body["nachbin"] is False


def test_byte_identical_reruns(docs):
    args = ("axioms", "--oracle", "r2", "--samples", "200", "--seed", "7",
            "--devries")
    assert run(*args).stdout == run(*args).stdout
    path = docs("chain2.json", CHAIN2)
    args = ("roundtrip", "--poset", path, "--samples", "150", "--seed", "3")
    assert run(*args).stdout == run(*args).stdout


def test_prox_related_reports_witness(docs):
    res = run("prox", "--oracle", "r2",
              "--left", docs("a.json", R2_ZERO), "--right", docs("b.json", R2_ONE))
    assert res.returncode == 0
    w = payload(res.stdout)["witness"]["values"]
    assert w == {"x": "0", "y": "0"}


def test_prox_unrelated_reports_point(docs):
    res = run("prox", "--oracle", "r2",
              "--left", docs("a.json", R2_UP), "--right", docs("b.json", R2_DOWN))
    assert res.returncode == 1
    ce = payload(res.stdout)["counterexample"]
    assert ce["point"] in ("x", "y")
    assert ce["envelope"] == "1" and ce["bound"] in ("0", "1")


def test_missing_file_is_input_error():
    res = run("validate", "--poset", "/nonexistent/order.json")
    assert res.returncode == 2
    assert "error:" in res.stdout


def test_malformed_json_is_input_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("not json", encoding="utf-8")
    assert run("validate", "--poset", str(path)).returncode == 2


def test_roundtrip_rejects_quasi_order(docs):
    res = run("roundtrip", "--poset", docs("loop.json", LOOP))
    assert res.returncode == 2


def test_roundtrip_chain(docs):
    res = run("roundtrip", "--poset", docs("chain2.json", CHAIN2),
              "--samples", "200")
    assert res.returncode == 0
    assert "eta order isomorphism: PASS" in res.stdout
    assert "roundtrip: PASS" in res.stdout


def test_envelope_from_quasiorder_skeleton(docs):
    res = run("envelope", "--skeleton", docs("skel.json", SKEL),
              "--function", docs("f.json", F10), "--direction", "upper")
    assert res.returncode == 0
    body = payload(res.stdout)
    assert body["envelope"]["values"] == {"p": "1", "q": "1"}
    assert body["already_member"] is False


def test_envelope_from_generators(docs):
    # One generator p -> 0, q -> 1 induces exactly the two-point chain.
    res = run("envelope", "--skeleton", docs("gens.json", GENS),
              "--function", docs("f.json", F10), "--direction", "upper")
    assert res.returncode == 0
    assert payload(res.stdout)["envelope"]["values"] == {"p": "1", "q": "1"}


def test_sw_approx_pinned(docs):
    res = run("sw-approx", "--poset", docs("chain2.json", CHAIN2),
              "--function", docs("f.json", F01), "--eps", "1/4")
    assert res.returncode == 0
    body = payload(res.stdout)
    assert body["certificate"]["approximant"]["values"] == {"p": "1/8", "q": "1"}
    assert body["error"] == "1/8"


def test_sw_approx_rejects_zero_eps(docs):
    res = run("sw-approx", "--poset", docs("chain2.json", CHAIN2),
              "--function", docs("f.json", F01), "--eps", "0")
    assert res.returncode == 2
    res = run("sw-approx", "--poset", docs("chain2.json", CHAIN2),
              "--function", docs("f.json", F01), "--eps", "junk")
    assert res.returncode == 2


def test_dieudonne_bounds_hold(docs):
    res = run("dieudonne", "--oracle", "r2", "--steps", "4",
              "--left", docs("f.json", R2_ZERO), "--right", docs("g.json", R2_ONE))
    assert res.returncode == 0
    assert "bounds hold" in res.stdout


def test_adjunction_chain_count(docs):
    res = run("adjunction", "--poset", docs("chain2.json", CHAIN2))
    assert res.returncode == 0
    assert payload(res.stdout)["count"] == 3
    assert "theta bijective: PASS" in res.stdout
    assert "naturality: PASS" in res.stdout


def test_pq_roundtrip_grid(docs):
    res = run("pq-roundtrip", "--skeleton", docs("skel.json", SKEL))
    assert res.returncode == 0
    assert "289 grid functions" in res.stdout


def test_main_is_directly_callable(docs):
    assert main(["spectrum", "--oracle", "r2"]) == 0


def test_carrier_mismatch_is_input_error(docs):
    res = run("prox", "--oracle", "r2",
              "--left", docs("f.json", F01), "--right", docs("g.json", R2_ONE))
    assert res.returncode == 2
