from __future__ import annotations

import json

import pytest

from uniline.cli import render_output, run

CHAIN3_TEXT = """\
signature
  lt/2
universe
  a b c
relations
  lt: (a,b) (b,c) (a,c)
"""


@pytest.fixture
def chain3_file(tmp_path):
    path = tmp_path / "chain3.txt"
    path.write_text(CHAIN3_TEXT, encoding="utf-8")
    return str(path)


def machine(argv: list[str]) -> tuple[int, list[dict]]:
    result = run(argv)
    text = render_output(result, machine=True)
    return result.exit_code, [json.loads(line) for line in text.splitlines()]


class TestExitCodes:
    def test_uniform_structure_exits_zero(self, tmp_path):
        path = tmp_path / "empty3.txt"
        path.write_text("signature\n  e/2\nuniverse\n  a b c\n", encoding="utf-8")
        code, records = machine(
            ["uniformity", "--structure", str(path), "--n", "1", "--method", "both", "--depth", "2"]
        )
        assert code == 0
        assert records[0]["uniform"] is True

    def test_non_uniform_exits_one_with_certificate(self, chain3_file):
        code, records = machine(
            ["uniformity", "--structure", chain3_file, "--n", "1", "--method", "both", "--depth", "3"]
        )
        assert code == 1
        record = records[0]
        assert record["uniform"] is False
        schema = next(r for r in record["results"] if r["mode"] == "schema")
        orbits = next(r for r in record["results"] if r["mode"] == "orbits")
        assert schema["counterexample"]["formula"]
        assert schema["counterexample"]["witness"]
        assert orbits["counterexample"]["first"]

    def test_unknown_command_exits_two(self):
        assert run(["bogus"]).exit_code == 2

    def test_input_error_exits_two(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("signature\n  lt/2\nuniverse\n  a a\n", encoding="utf-8")
        result = run(["structure", "parse", "--structure", str(path)])
        assert result.exit_code == 2
        assert "error" in result.records[0]

    def test_missing_file_exits_two(self):
        assert run(["structure", "parse", "--structure", "/nonexistent"]).exit_code == 2

    def test_commute_failure_exits_one_with_witness(self):
        code, records = machine(["line", "commute", "--f", "x+1", "--g", "2*x"])
        assert code == 1
        assert records[0]["witness"]["x"] == "0"

    def test_commute_success_exits_zero(self):
        assert run(["line", "commute", "--f", "x+1", "--g", "x+1/2"]).exit_code == 0

    def test_probe_disconnected_exits_one(self):
        code, records = machine(["cuts", "probe", "--cut", "sq-lt:2", "--bound", "10000"])
        assert code == 1
        assert records[0]["verdict"] == "disconnected"
        assert records[0]["witness"] == "sq-lt 2"

    def test_exit_one_certificates_reverify(self, chain3_file):
        from fractions import Fraction

        from uniline.formulas import evaluate, parse_formula
        from uniline.ordline import parse_affine
        from uniline.structures import parse_structure

        code, records = machine(
            ["uniformity", "--structure", chain3_file, "--n", "1", "--method", "schema", "--depth", "2"]
        )
        assert code == 1
        structure = parse_structure(CHAIN3_TEXT)
        ce = records[0]["results"][0]["counterexample"]
        formula = parse_formula(ce["formula"], structure.signature)
        assert evaluate(structure, formula, {"x1": ce["witness"][0]})
        assert not evaluate(structure, formula, {"x1": ce["violating"][0]})

        code, records = machine(["line", "commute", "--f", "x+1", "--g", "2*x"])
        assert code == 1
        witness = records[0]["witness"]
        f, g = parse_affine("x+1"), parse_affine("2*x")
        x = Fraction(witness["x"])
        assert g(f(x)) == Fraction(witness["g_of_fx"])
        assert f(g(x)) == Fraction(witness["f_of_gx"])
        assert witness["g_of_fx"] != witness["f_of_gx"]


class TestCommands:
    def test_field_eval(self):
        code, records = machine(["field", "eval", "--zero", "0", "--one", "2", "--expr", "2 * 3"])
        assert code == 0
        assert records[0]["value"] == "3"

    def test_field_eval_plain(self):
        result = run(["field", "eval", "--zero", "0", "--one", "1", "--expr", "2 * (3 + 4)"])
        assert result.lines == ["14"]

    def test_field_verify(self):
        code, records = machine(["field", "verify", "--zero=-7/3", "--one", "5/2", "--samples", "100"])
        assert code == 0
        assert records[0]["all_passed"] is True

    def test_field_iso(self):
        code, records = machine(
            ["field", "iso", "--zero1", "0", "--one1", "1", "--zero2", "1", "--one2", "3", "--samples", "50"]
        )
        assert code == 0
        assert records[0]["iso"] == "2*x + 1"

    def test_field_stretch(self):
        code, records = machine(
            ["field", "stretch", "--zero", "0", "--one", "1", "--factor", "3", "--lo", "0", "--hi", "1"]
        )
        assert code == 0
        assert records[0]["image"] == ["0", "3"]

    def test_cuts_classify_gap(self):
        code, records = machine(
            ["cuts", "classify", "--oracle", "sq-lt", "--target", "2", "--bound", "1000000"]
        )
        assert code == 0
        assert records[0]["kind"] == "gap"

    def test_cuts_classify_principal(self):
        code, records = machine(
            ["cuts", "classify", "--oracle", "lt", "--target", "3/7", "--bound", "1000000"]
        )
        assert code == 0
        assert records[0]["kind"] == "principal"
        assert records[0]["point"] == "3/7"

    def test_cuts_rays_and_galois(self):
        code, records = machine(["cuts", "rays", "--set", "1 2 3"])
        assert code == 0
        assert records[0]["upper"] == {"kind": "upward", "endpoint": "3", "closed": False}
        code, records = machine(["cuts", "galois", "--set", "1 2 3"])
        assert code == 0
        assert records[0]["passed"] is True

    def test_structure_parse_round_trip(self, chain3_file):
        code, records = machine(["structure", "parse", "--structure", chain3_file])
        assert code == 0
        assert records[0]["rendered"] == CHAIN3_TEXT.replace("(a,b) (b,c) (a,c)", "(a,b) (a,c) (b,c)")

    def test_structure_parse_json_emit(self, chain3_file):
        code, records = machine(["structure", "parse", "--structure", chain3_file, "--emit", "json"])
        assert code == 0
        assert '"signature"' in records[0]["rendered"]
        reparsed = run(["structure", "parse", "--structure", chain3_file])
        assert reparsed.exit_code == 0

    def test_cyclic_linearize_with_infinity(self):
        code, records = machine(["cyclic", "linearize", "--cut", "1", "--points", "2,inf,0"])
        assert code == 0
        assert records[0]["ordered"] == ["2", "inf", "0"]

    def test_structure_aut(self, chain3_file):
        code, records = machine(["structure", "aut", "--structure", chain3_file])
        assert code == 0
        assert records[0]["order"] == 1
        assert records[0]["automorphisms"] == [["a", "b", "c"]]

    def test_structure_orbits(self, chain3_file):
        code, records = machine(
            ["structure", "orbits", "--structure", chain3_file, "--n", "1"]
        )
        assert code == 0
        assert records[0]["classes"] == [[["a"]], [["b"]], [["c"]]]

    def test_line_classify(self):
        code, records = machine(["line", "classify", "--map", "x - 2"])
        assert records[0]["classification"] == "lowering"
        code, records = machine(["line", "classify", "--map", "2*x"])
        assert records[0]["classification"] == "mixed"

    def test_line_tile(self):
        code, records = machine(["line", "tile", "--shift", "2/3", "--base", "0", "--window", "3"])
        assert code == 0
        assert len(records[0]["tiles"]) == 6
        assert records[0]["span"] == ["-2", "2"]

    def test_line_factor(self):
        code, records = machine(
            ["line", "factor", "--map", "2*x+1", "--shift", "1", "--side", "left"]
        )
        assert records[0]["h"] == "2*x"

    def test_line_measure(self):
        code, records = machine(["line", "measure", "--shift", "1", "--lo", "0", "--hi", "7/2"])
        assert records[0]["count"] == 3
        assert records[0]["remainder"] == ["3", "7/2"]

    def test_cyclic_orient(self):
        code, records = machine(["cyclic", "orient", "--points", "2,3,1"])
        assert records[0]["oriented"] is True
        code, records = machine(["cyclic", "orient", "--points", "3,1,inf"])
        assert records[0]["oriented"] is False

    def test_cyclic_linearize(self):
        code, records = machine(["cyclic", "linearize", "--cut", "0", "--points", "2,-1,1"])
        assert records[0]["ordered"] == ["1", "2", "-1"]

    def test_cyclic_mobius(self):
        code, records = machine(["cyclic", "mobius", "--map", "0,1,1,0"])
        assert records[0]["orientation"] == "reverses"
        code, records = machine(["cyclic", "mobius", "--map", "1,1,0,1"])
        assert records[0]["orientation"] == "preserves"


class TestDeterminism:
    COMMANDS = [
        ["field", "verify", "--zero", "1", "--one", "3", "--samples", "200"],
        ["cyclic", "mobius", "--map", "2,1,1,1", "--triples", "25"],
        ["cuts", "classify", "--oracle", "sq-lt", "--target", "2", "--bound", "1000000"],
        ["line", "commute", "--f", "x+1", "--g", "2*x"],
    ]

    @pytest.mark.parametrize("argv", COMMANDS, ids=[" ".join(c[:2]) for c in COMMANDS])
    def test_same_seed_byte_identical(self, argv):
        first = run(["--seed", "7"] + argv)
        second = run(["--seed", "7"] + argv)
        assert render_output(first, machine=True) == render_output(second, machine=True)
        assert first.exit_code == second.exit_code

    def test_records_carry_schema_version(self, chain3_file):
        for argv in [
            ["structure", "parse", "--structure", chain3_file],
            ["field", "eval", "--zero", "0", "--one", "1", "--expr", "1 + 1"],
        ]:
            _, records = machine(argv)
            assert all(r["schema_version"] == 1 for r in records)
