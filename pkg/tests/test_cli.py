import json
import os

import pytest

from lfuzzord.cli import main

FIX = os.path.join(os.path.dirname(__file__), "fixtures")


def fx(name):
    return os.path.join(FIX, name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestFrameCommands:
    def test_chain(self, capsys):
        code, out, _ = run(capsys, "frame", "chain", "3")
        doc = json.loads(out)
        assert code == 0 and doc["kind"] == "frame"
        assert doc["labels"] == ["0", "m", "1"]

    def test_bool(self, capsys):
        code, out, _ = run(capsys, "frame", "bool", "2")
        assert code == 0 and len(json.loads(out)["leq"]) == 4

    def test_product(self, capsys):
        code, out, _ = run(capsys, "frame", "product", "chain:2", "chain:3")
        assert code == 0 and len(json.loads(out)["leq"]) == 6

    def test_check_good(self, capsys, tmp_path):
        code, out, _ = run(capsys, "frame", "chain", "4")
        p = tmp_path / "f.json"
        p.write_text(out)
        code, out, _ = run(capsys, "frame", "check", str(p))
        assert code == 0 and json.loads(out)["valid"]

    def test_check_nondistributive(self, capsys, tmp_path):
        m3 = {"kind": "frame", "leq": [
            [1, 1, 1, 1, 1], [0, 1, 0, 0, 1], [0, 0, 1, 0, 1],
            [0, 0, 0, 1, 1], [0, 0, 0, 0, 1]]}
        p = tmp_path / "m3.json"
        p.write_text(json.dumps(m3))
        code, out, err = run(capsys, "frame", "check", str(p))
        assert code == 1

    def test_malformed_json_exit_2(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{nope")
        code, _, err = run(capsys, "frame", "check", str(p))
        assert code == 2 and "line" in err


class TestOrderCommands:
    def order_file(self, tmp_path, e):
        p = tmp_path / "order.json"
        p.write_text(json.dumps({"kind": "lorder", "e": e}))
        return str(p)

    def test_check_valid(self, capsys, tmp_path):
        p = self.order_file(tmp_path, [["1", "m"], ["m", "1"]])
        code, out, _ = run(capsys, "order", "check", p)
        assert code == 0 and json.loads(out)["valid"]

    def test_check_invalid(self, capsys, tmp_path):
        p = self.order_file(tmp_path, [["1", "1"], ["1", "1"]])
        code, out, _ = run(capsys, "order", "check", p)
        assert code == 1

    def test_join(self, capsys, tmp_path):
        p = self.order_file(tmp_path, [["1", "1"], ["0", "1"]])
        s = tmp_path / "s.json"
        s.write_text(json.dumps({"kind": "fsubset", "entries": {"0": "1"}}))
        code, out, _ = run(capsys, "order", "join", p, str(s))
        doc = json.loads(out)
        assert code == 0 and doc["exists"] and doc["element"] == 0

    def test_lattice_and_distributive(self, capsys, tmp_path):
        p = self.order_file(tmp_path, [["1", "1"], ["0", "1"]])
        code, out, _ = run(capsys, "order", "lattice", p)
        assert code == 0 and json.loads(out)["l-lattice"]
        code, out, _ = run(capsys, "order", "distributive", p)
        assert code == 0 and json.loads(out)["distributive"]


class TestGroupCommands:
    def test_check_crisp_z(self, capsys):
        code, out, _ = run(capsys, "group", "check", fx("z_cone_crisp.json"))
        doc = json.loads(out)
        assert code == 0 and doc["fog"]["ok"] and doc["negation"]["ok"]

    def test_check_finite(self, capsys):
        code, out, _ = run(capsys, "group", "check", fx("z4_fuzzy_group.json"))
        assert code == 0

    def test_cone_validate(self, capsys):
        code, out, _ = run(capsys, "group", "cone-validate",
                           fx("z_cone_3chain.json"))
        assert code == 0 and json.loads(out)["ok"]

    def test_from_cone(self, capsys):
        code, out, _ = run(capsys, "group", "from-cone", fx("z_cone_3chain.json"))
        doc = json.loads(out)
        assert code == 0 and doc["fog"]["ok"]

    def test_riesz(self, capsys):
        code, out, _ = run(capsys, "group", "riesz", fx("z_cone_crisp.json"),
                           "--a", "3", "--bs", "2;2", "--t", "1")
        doc = json.loads(out)
        assert code == 0
        assert doc["parts"] == [[1], [2]] and doc["oracle-feasible"]

    def test_power_identity(self, capsys):
        code, out, _ = run(capsys, "--window", "12", "group", "power-identity",
                           fx("z_cone_crisp.json"), "--z", "-1", "--n", "2")
        assert code == 0 and json.loads(out)["ok"]

    def test_closure(self, capsys):
        code, out, _ = run(capsys, "group", "closure", fx("z_cone_3chain.json"))
        assert code == 0 and json.loads(out)["ok"]


class TestSubQuotientCommands:
    def test_sub_check(self, capsys):
        code, out, _ = run(capsys, "sub", "check", fx("z_cone_3chain.json"),
                           fx("parity_filter.json"))
        doc = json.loads(out)
        assert code == 0
        assert doc["normal-subgroup"]["ok"] and doc["convex"]["ok"]

    def test_sub_hull(self, capsys):
        code, out, _ = run(capsys, "sub", "hull", fx("z_cone_3chain.json"),
                           fx("parity_filter.json"))
        doc = json.loads(out)
        assert code == 0 and doc["details"]["input-was-convex"]

    def test_quotient_build_parity(self, capsys):
        code, out, _ = run(capsys, "quotient", "build", fx("z_cone_3chain.json"),
                           fx("parity_filter.json"))
        doc = json.loads(out)
        assert code == 0 and doc["ok"]
        assert doc["classes"] == 2 and doc["alpha"] == "1"
        assert doc["e-tilde"] == [[2, 1], [1, 2]]
        assert sorted(doc["s-tilde"]) == ["1", "m"]

    def test_quotient_kernel(self, capsys):
        code, out, _ = run(capsys, "quotient", "kernel", fx("z_cone_crisp.json"),
                           fx("doubling_hom.json"))
        doc = json.loads(out)
        assert code == 0 and doc["ok"]
        assert doc["details"]["level-members"] == [[0]]


class TestVerifyCommand:
    def test_group_claims(self, capsys):
        code, out, _ = run(capsys, "verify", "--claims", "prop-4.3",
                           "--group", fx("z_cone_crisp.json"))
        doc = json.loads(out)
        assert code == 0
        assert {r["claim"] for r in doc["reports"]} == {
            "prop-4.3-i", "prop-4.3-ii", "prop-4.3-iii", "prop-4.3-v",
            "prop-4.3-vii"}
        assert all(r["verdict"] == "holds" for r in doc["reports"])

    def test_empty_claims(self, capsys):
        code, out, _ = run(capsys, "verify")
        assert code == 0 and json.loads(out)["reports"] == []

    def test_unknown_claim(self, capsys):
        code, _, err = run(capsys, "verify", "--claims", "thm-nonsense")
        assert code == 2

    def test_missing_input_is_error_verdict(self, capsys):
        code, out, _ = run(capsys, "verify", "--claims", "thm-quotient")
        doc = json.loads(out)
        assert code == 1 and doc["reports"][0]["verdict"] == "error"

    def test_quotient_claims_with_inputs(self, capsys):
        code, out, _ = run(capsys, "verify", "--claims",
                           "thm-quotient,thm-quotient-ii,cor-projection",
                           "--group", fx("z_cone_3chain.json"),
                           "--sub", fx("parity_filter.json"))
        doc = json.loads(out)
        assert code == 0
        assert all(r["verdict"] == "holds" for r in doc["reports"])

    def test_deterministic_output(self, capsys):
        args = ("verify", "--claims", "prop-4.3-ii",
                "--group", fx("z_cone_3chain.json"))
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2


class TestEnumerateHunt:
    def test_enumerate_lorder(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--kind", "lorder",
                           "--size", "2")
        doc = json.loads(out)
        assert code == 0 and doc["count"] == 8

    def test_enumerate_lfilter_limit(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--kind", "lfilter",
                           "--size", "4", "--limit", "1", "--nontrivial")
        doc = json.loads(out)
        assert code == 0
        assert doc["structures"][0]["values"] == [1, 0, 0, 0]

    def test_hunt_finds_witness(self, capsys):
        code, out, _ = run(capsys, "hunt", "--claim", "thm-quotient",
                           "--drop", "convex", "--sizes", "2,3")
        doc = json.loads(out)
        assert code == 1 and doc["witness"] is not None

    def test_hunt_intact_none(self, capsys):
        code, out, _ = run(capsys, "hunt", "--claim", "thm-quotient",
                           "--sizes", "2,3")
        doc = json.loads(out)
        assert code == 0 and doc["witness"] is None

    def test_unknown_weakening(self, capsys):
        code, _, _ = run(capsys, "hunt", "--claim", "thm-quotient",
                         "--drop", "nonsense")
        assert code == 2

    def test_guard_exceeded(self, capsys):
        code, _, err = run(capsys, "--guard", "10", "enumerate", "--kind",
                           "lorder", "--size", "3")
        assert code == 3


class TestTextFormat:
    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "--format", "text", "frame", "chain", "2")
        assert code == 0 and "kind: frame" in out
