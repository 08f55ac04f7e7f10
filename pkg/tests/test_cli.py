import io
import json
import subprocess
import sys

import jsonschema
import pytest

from spextral import acceptance
from spextral.cli import load_schema, run
from spextral.families import path
from spextral.graph import graph6_decode, graph6_encode


def call(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


def call_json(schema, *argv, stdin=""):
    code, out, err = call(*argv, stdin=stdin)
    assert code == 0, err
    body = json.loads(out)
    jsonschema.validate(body, load_schema(schema))
    return body


class TestConstruct:
    def test_k2(self):
        assert call("construct", "--family", "split", "--n", "2", "--h", "1") == (0, "A_\n", "")

    def test_split(self):
        code, out, _ = call("construct", "--family", "split", "--n", "10", "--h", "3")
        assert graph6_decode(out.strip()).num_edges == 24

    def test_clique_join_default_r(self):
        code, out, _ = call("construct", "--family", "cjc", "--n", "28", "--k", "1", "--l", "4")
        assert graph6_decode(out.strip()).num_edges == 54

    def test_missing_parameter(self):
        code, out, err = call("construct", "--family", "split", "--n", "5")
        assert code == 2 and out == ""
        body = json.loads(err)
        jsonschema.validate(body, load_schema("error"))
        assert "--h" in body["message"]


class TestCommands:
    def test_rho(self):
        body = call_json("rho", "rho", "--g6", "Bw")
        assert abs(body["rho"] - 2.0) <= 1e-12

    def test_rho_from_stdin(self):
        body = call_json("rho", "rho", stdin="\nBw\n")
        assert abs(body["rho"] - 2.0) <= 1e-12

    def test_bound(self):
        body = call_json("bound", "bound", "--g6", "Bw")
        assert body["ok"]

    def test_turan(self):
        body = call_json("turan", "turan", "--pattern", "2S3", "--n", "7")
        assert body["value"] == 21
        assert body["case"] == "n<k(l+1)"
        assert body["guaranteed"] is True

    def test_turan_with_families(self):
        body = call_json("turan", "turan", "--pattern", "1S3+1P4", "--n", "28")
        assert body["value"] == 54
        assert [graph6_decode(x).num_edges for x in body["families"]] == [54]

    def test_predict(self):
        body = call_json("predict", "predict", "--pattern", "1S3+1P4", "--n", "28")
        assert body["descriptions"] == [{"kind": "Split", "n": 28, "h": 2}]
        assert body["guaranteed"] is False

    def test_predict_reading(self):
        body = call_json("predict", "predict", "--pattern", "3P2", "--n", "9", "--reading", "matching")
        assert body["descriptions"][0]["h"] == 2

    def test_free(self):
        assert call_json("free", "free", "--pattern", "2S3", "--g6", "Bw")["free"] is True
        body = call_json("free", "free", "--pattern", "1P3", "--g6", "Bw")
        assert body["free"] is False and body["embedding"][0]["type"] == "path"

    def test_levelsets_and_claims(self):
        _, g6, _ = call("construct", "--family", "split", "--n", "200", "--h", "2")
        body = call_json("levelsets", "levelsets", "--g6", g6.strip(), "--k", "1", "--l", "4")
        assert body["Rpp"] == [0, 1] and body["h"] == 2
        body = call_json("claims", "claims", "--g6", g6.strip(), "--k", "1", "--l", "4")
        assert body["A"] and body["B"] and body["C"]

    def test_search_ex(self):
        body = call_json("search_report", "search-ex", "--pattern", "1P4", "--n", "4")
        assert body["best_value"] == 3 and body["certificates"] == ["CF", "CJ"]

    def test_search_sp(self):
        body = call_json("search_report", "search-sp", "--pattern", "2P2", "--n", "7", "--timing")
        assert body["certificates"] == ["F??Fw"] and "elapsed" in body

    def test_search_jobs_env(self, monkeypatch):
        monkeypatch.setenv("SPEXTRAL_JOBS", "2")
        a = call("search-ex", "--pattern", "2P3", "--n", "6")[1]
        b = call("search-ex", "--pattern", "2P3", "--n", "6", "--jobs", "1")[1]
        assert a == b

    def test_search_universe_file(self, tmp_path):
        p = tmp_path / "u.g6"
        p.write_text("Bw\nBW\n")
        body = call_json("search_report", "search-ex", "--pattern", "1P3", "--n", "3", "--g6-file", str(p))
        assert body["best_value"] is None and body["enumerated"] == 0

    def test_verify_suite(self, monkeypatch):
        quick = [c for c in acceptance.CRITERIA if c.number == 4]
        monkeypatch.setattr(acceptance, "CRITERIA", tuple(quick))
        code, out, _ = call("verify", "--suite", "formulas", "--json")
        lines = out.strip().splitlines()
        assert lines[0].startswith("[PASS] criterion  4")
        body = json.loads(lines[-1])
        jsonschema.validate(body, load_schema("verify"))
        assert code == 0

    def test_verify_failure_exit_code(self, monkeypatch):
        broken = acceptance.Criterion(99, "always fails", "spectral", None, lambda: (False, "by design"))
        monkeypatch.setattr(acceptance, "CRITERIA", (broken,))
        code, out, _ = call("verify", "--suite", "spectral")
        assert code == 4
        assert out.startswith("[FAIL] criterion 99")


class TestErrors:
    @pytest.mark.parametrize(
        "argv, kind",
        [
            (("rho", "--g6", "B!"), "graph6"),
            (("turan", "--pattern", "2Q3", "--n", "4"), "argument"),
            (("predict", "--pattern", "1S9", "--n", "4"), "unsupported_pattern"),
            (("search-ex", "--pattern", "1P4", "--n", "11"), "argument"),
            (("search-ex", "--pattern", "1P4", "--n", "10"), "argument"),
            (("bogus",), "usage"),
            (("rho",), "usage"),
            (("search-ex", "--pattern", "1P4", "--n", "4", "--jobs", "0"), "usage"),
        ],
    )
    def test_argument_errors(self, argv, kind):
        code, out, err = call(*argv)
        assert code == 2 and out == ""
        body = json.loads(err)
        jsonschema.validate(body, load_schema("error"))
        assert body["error"] == kind

    def test_graph6_offset(self):
        _, _, err = call("rho", "--g6", "Bww")
        assert json.loads(err)["offset"] == 2

    def test_non_convergence_exit_code(self):
        code, _, err = call("rho", "--g6", graph6_encode(path(60)), "--tol", "1e-15", "--max-iter", "2")
        assert code == 3
        body = json.loads(err)
        jsonschema.validate(body, load_schema("error"))
        assert body["error"] == "convergence"


def test_console_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "spextral.cli", "construct", "--family", "split", "--n", "2", "--h", "1"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and res.stdout == "A_\n"
