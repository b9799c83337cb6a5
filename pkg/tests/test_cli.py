import json

import pytest

from qkbw.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCasimirVerb:
    def test_json_fixture(self, capsys):
        code, out, _ = run(
            capsys, "casimir", "--n", "2", "--rho", "1,0", "--q-max", "4", "--format", "json"
        )
        assert code == 0
        data = json.loads(out)
        by_q = {row["q"]: row for row in data["values"]}
        assert by_q[2]["c"] == "10/1"
        assert by_q[4]["c"] == "160/1"

    def test_json_round_trip_is_byte_identical(self, capsys):
        code, out, _ = run(
            capsys, "casimir", "--n", "2", "--rho", "1,0", "--q-max", "3", "--format", "json"
        )
        assert code == 0
        assert json.dumps(json.loads(out), indent=2) + "\n" == out

    def test_shorthand_weight(self, capsys):
        code, out, _ = run(
            capsys, "casimir", "--n", "3", "--rho", "2^1 1^1 @ 3", "--format", "json"
        )
        assert code == 0
        assert json.loads(out)["rho"] == "2,1,0"

    def test_rejects_small_rank(self, capsys):
        code, _, err = run(capsys, "casimir", "--n", "1", "--rho", "1", "--format", "json")
        assert code == 2
        assert "error" in err


class TestBoundVerb:
    def test_spec_fixture(self, capsys):
        code, out, _ = run(
            capsys,
            "bound",
            "--n", "2", "--k", "2", "--a", "2", "--b", "0",
            "--kappa-sign", "+", "--format", "json",
        )
        assert code == 0
        data = json.loads(out)
        assert data["bound"] == "3/8"
        assert data["matched_closed_form"] == "laplace-bound-table"

    def test_markdown(self, capsys):
        code, out, _ = run(
            capsys, "bound", "--n", "2", "--k", "1", "--a", "0", "--b", "0", "--kappa-sign", "-"
        )
        assert code == 0
        assert "bound:" in out

    def test_determinism(self, capsys):
        argv = [
            "bound", "--n", "3", "--k", "2", "--a", "2", "--b", "1",
            "--kappa-sign", "-", "--format", "json",
        ]
        code1, out1, _ = run(capsys, *argv)
        code2, out2, _ = run(capsys, *argv)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_bad_range_is_validation_error(self, capsys):
        code, _, err = run(
            capsys, "bound", "--n", "2", "--k", "1", "--a", "3", "--b", "0", "--kappa-sign", "+"
        )
        assert code == 2


class TestTableVerb:
    def test_markdown_has_five_rows(self, capsys):
        code, out, _ = run(capsys, "table1", "--n", "3", "--a", "2", "--b", "1")
        assert code == 0
        assert out.count("rho+mu") + out.count("rho-mu") == 5

    def test_needs_generic_shape(self, capsys):
        code, _, err = run(capsys, "table1", "--n", "3", "--a", "2", "--b", "2")
        assert code == 2


class TestDecomposeVerb:
    def test_nu_level(self, capsys):
        code, out, _ = run(
            capsys, "decompose", "--n", "2", "--rho", "1,0", "--format", "json"
        )
        assert code == 0
        data = json.loads(out)
        assert data["summand_count"] == 3

    def test_bundle_level(self, capsys):
        code, out, _ = run(
            capsys, "decompose", "--n", "3", "--k", "2", "--rho", "1,1,0", "--format", "json"
        )
        assert code == 0
        data = json.loads(out)
        assert data["summand_count"] == 6


class TestBwVerb:
    def test_json(self, capsys):
        code, out, _ = run(
            capsys, "bw", "--n", "2", "--k", "2", "--a", "1", "--b", "0", "--format", "json"
        )
        assert code == 0
        data = json.loads(out)
        tags = [i["provenance"] for i in data["identities"]]
        assert "sum" in tags and "bw3" in tags

    def test_raw_families(self, capsys):
        code, out, _ = run(
            capsys,
            "bw", "--n", "3", "--k", "2", "--a", "2", "--b", "1", "--raw", "--format", "json",
        )
        assert code == 0
        data = json.loads(out)
        tags = [i["provenance"] for i in data["identities"]]
        assert tags == ["bochner1(1)", "bochner1(2)", "bochner2(0)", "bochner2(1)", "bochner2(2)"]

    def test_emit_latex(self, capsys):
        code, out, _ = run(
            capsys, "bw", "--n", "2", "--k", "1", "--a", "0", "--b", "0", "--emit-latex"
        )
        assert code == 0
        assert "B_{+1,+1}" in out and "\\kappa" in out

    def test_csv(self, capsys):
        code, out, _ = run(
            capsys, "bw", "--n", "2", "--k", "1", "--a", "1", "--b", "0", "--format", "csv"
        )
        assert code == 0
        assert out.splitlines()[0].startswith("provenance,")


class TestVanishVerb:
    def test_json(self, capsys):
        code, out, _ = run(capsys, "vanish", "--n", "2", "--k", "0", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["ratios"]["+1,+1"] == "-9/64"
        assert data["verdicts"]["+"]["verdict"] == "vanishes"
        assert data["verdicts"]["-"]["verdict"] == "vanishes"


class TestHarmonicVerb:
    def test_both_signs(self, capsys):
        code, out, _ = run(capsys, "harmonic", "--n", "2", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["classification"]["+"] == [[0, 0, 0], [0, 1, 1], [0, 2, 2]]
        assert [4, 0, 0] in data["classification"]["-"]


class TestHpnVerb:
    def test_sharp(self, capsys):
        code, out, _ = run(
            capsys, "hpn", "--n", "2", "--k", "2", "--a", "0", "--b", "0", "--format", "json"
        )
        assert code == 0
        data = json.loads(out)
        assert data["first_eigenvalue"] == "1/1"
        assert data["sharp"] is True

    def test_low_k_rejected(self, capsys):
        code, _, _ = run(capsys, "hpn", "--n", "2", "--k", "1", "--a", "0", "--b", "0")
        assert code == 2


class TestSweepVerb:
    def test_small_sweep_no_mismatches(self, capsys):
        code, out, _ = run(capsys, "sweep", "--n", "2", "--kappa-sign", "both")
        assert code == 0
        assert "0 mismatches" in out

    def test_csv_output(self, capsys):
        code, out, _ = run(capsys, "sweep", "--n", "2", "--k", "1", "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,k,a,b,kappa_sign,lp_bound,expected,match"
        assert all(line.endswith(",1") for line in lines[1:])

    def test_csv_ledger_file(self, capsys, tmp_path):
        path = tmp_path / "ledger.csv"
        code, _, _ = run(
            capsys, "sweep", "--n", "2", "--k", "0..1", "--a", "1", "--b", "0", "--csv", str(path)
        )
        assert code == 0
        assert path.read_text().startswith("n,k,a,b")

    def test_hpn_sweep(self, capsys):
        code, out, _ = run(capsys, "sweep", "--n", "2", "--hpn")
        assert code == 0
        assert "0 mismatches" in out

    def test_empty_range(self, capsys):
        code, out, _ = run(capsys, "sweep", "--n", "2", "--k", "9", "--format", "json")
        assert code == 0
        assert json.loads(out)["cases"] == 0


class TestSelftestVerb:
    def test_quick_passes(self, capsys):
        code, out, _ = run(capsys, "selftest", "--quick")
        assert code == 0
        assert "[PASS]" in out and "[FAIL]" not in out


class TestJsonRoundTrips:
    CASES = [
        ["casimir", "--n", "2", "--rho", "1,0"],
        ["decompose", "--n", "2", "--rho", "1,1"],
        ["decompose", "--n", "2", "--k", "2", "--rho", "1,1"],
        ["table1", "--n", "4", "--a", "3", "--b", "1"],
        ["bw", "--n", "2", "--k", "1", "--a", "1", "--b", "0"],
        ["bound", "--n", "2", "--k", "1", "--a", "1", "--b", "0", "--kappa-sign", "-"],
        ["vanish", "--n", "3", "--k", "2"],
        ["harmonic", "--n", "3"],
        ["hpn", "--n", "2", "--k", "3", "--a", "1", "--b", "0"],
    ]

    @pytest.mark.parametrize("argv", CASES, ids=lambda a: a[0])
    def test_byte_identical(self, capsys, argv):
        code, out, _ = run(capsys, *argv, "--format", "json")
        assert code == 0
        assert json.dumps(json.loads(out), indent=2) + "\n" == out


class TestCsvOutputs:
    def test_casimir_csv(self, capsys):
        code, out, _ = run(capsys, "casimir", "--n", "2", "--rho", "1,0", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "q,c,c_hat"
        assert "2,10/1,35/1" in out

    def test_decompose_csv_parses(self, capsys):
        import csv as csv_mod
        import io

        code, out, _ = run(capsys, "decompose", "--n", "2", "--rho", "1,0", "--format", "csv")
        assert code == 0
        rows = list(csv_mod.reader(io.StringIO(out)))
        assert rows[0] == ["nu", "weight", "dominant", "reldim"]
        assert rows[1] == ["1", "2,0", "1", "5/2"]

    def test_vanish_csv(self, capsys):
        code, out, _ = run(capsys, "vanish", "--n", "2", "--k", "0", "--format", "csv")
        assert code == 0
        assert "+1;+1,-9/64" in out

    def test_harmonic_csv(self, capsys):
        code, out, _ = run(capsys, "harmonic", "--n", "2", "--kappa-sign", "+", "--format", "csv")
        assert code == 0
        assert out.splitlines()[1:] == ["+,0,0,0", "+,0,1,1", "+,0,2,2"]


class TestParityNote:
    def test_decompose_flags_odd_labels(self, capsys):
        code, out, _ = run(capsys, "decompose", "--n", "2", "--k", "1", "--rho", "0,0")
        assert code == 0
        assert "does not factor through" in out
        code, out, _ = run(
            capsys, "decompose", "--n", "2", "--k", "1", "--rho", "0,0", "--format", "json"
        )
        assert json.loads(out)["parity_warning"] is True


class TestGeneralWeightBound:
    def test_rho_outside_form_shapes(self, capsys):
        # connection Laplacian works on any dominant weight; no closed-form tag
        code, out, _ = run(
            capsys,
            "bound", "--n", "2", "--k", "2", "--rho", "3,1",
            "--operator", "connection", "--kappa-sign", "+", "--format", "json",
        )
        assert code == 0
        data = json.loads(out)
        assert data["bound"] == "1/8"
        assert data["matched_closed_form"] is None

    def test_inconsistent_rewriting_is_exit_3(self, capsys):
        # the formal Hodge expansion on a non-form weight has no
        # nonnegative rewriting; that is reported as an inconsistency
        code, _, err = run(
            capsys,
            "bound", "--n", "2", "--k", "2", "--rho", "3,1",
            "--operator", "hodge", "--kappa-sign", "+",
        )
        assert code == 3
        assert "inconsistency" in err


class TestUsageErrors:
    def test_unknown_verb(self, capsys):
        assert run(capsys, "eigensolve")[0] == 2

    def test_missing_required_flag(self, capsys):
        assert run(capsys, "casimir")[0] == 2

    def test_unknown_flag(self, capsys):
        assert run(capsys, "harmonic", "--n", "2", "--mode", "fast")[0] == 2
