import json
import math

import pytest

from secular.cli import run
from secular.io import (
    dump_document,
    format_fraction,
    matrix_from_doc,
    matrix_to_doc,
    parse_fraction,
)
from secular.matrices import RatMatrix

NOTE23_DOC = {
    "rows": 3,
    "cols": 3,
    "symmetric": True,
    "entries": ["1/1", "-1/1", "0/1", "-1/1", "2/1", "1/1", "0/1", "1/1", "1/1"],
}


@pytest.fixture
def note23_file(tmp_path):
    path = tmp_path / "note23.json"
    path.write_text(json.dumps(NOTE23_DOC))
    return str(path)


def write_json(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run_to_file(args, tmp_path, name="out.json"):
    out = tmp_path / name
    code = run(args + ["--output", str(out)])
    return code, out.read_text() if out.exists() else None


class TestRoundTrip:
    def test_fraction_literals(self):
        for text in ("-3/7", "5/1", "0/1", "12/35"):
            assert format_fraction(parse_fraction(text)) == text

    def test_matrix_documents(self):
        M = RatMatrix.from_rows([["1/3", "-2/7"], ["5/1", "0/1"]])
        doc = matrix_to_doc(M)
        again = matrix_from_doc(json.loads(dump_document(doc)))
        assert again == M

    def test_cli_matrix_output_reparses(self, tmp_path, note23_file):
        code, text = run_to_file(
            ["weierstrass-reduce", "--input", write_json(
                tmp_path,
                "pair.json",
                {
                    "phi": {"rows": 2, "cols": 2,
                            "entries": ["2/1", "1/1", "1/1", "2/1"]},
                    "psi": {"rows": 2, "cols": 2,
                            "entries": ["1/1", "0/1", "0/1", "1/1"]},
                },
            )],
            tmp_path,
        )
        assert code == 0
        doc = json.loads(text)
        thetas = [matrix_from_doc(c["theta"]) for c in doc["components"]]
        total = thetas[0] + thetas[1]
        assert total == RatMatrix.from_rows([[2, 1], [1, 2]])


class TestVerbs:
    def test_charpoly_note23(self, tmp_path, note23_file):
        code, text = run_to_file(["charpoly", "--input", note23_file], tmp_path)
        assert code == 0
        doc = json.loads(text)
        assert doc["charpoly"]["coefficients"] == ["0/1", "-3/1", "4/1", "-1/1"]
        assert doc["charpoly"]["display"] == "-x^3+4*x^2-3*x"
        assert doc["path"] == "exact"
        assert doc["provenance"]["algorithm"]

    def test_roots_and_eigvec(self, tmp_path, note23_file):
        code, text = run_to_file(["roots", "--input", note23_file], tmp_path)
        assert code == 0
        roots = json.loads(text)["roots"]
        assert [r["value"] for r in roots] == ["0/1", "1/1", "3/1"]
        code, text = run_to_file(
            ["eigvec", "--input", note23_file, "--root", "1"], tmp_path
        )
        assert code == 0
        assert json.loads(text)["vectors"] == [["1/1", "0/1", "1/1"]]

    def test_invariant_factors_and_divisors(self, tmp_path, note23_file):
        code, text = run_to_file(
            ["invariant-factors", "--input", note23_file], tmp_path
        )
        assert code == 0
        doc = json.loads(text)
        assert [f["display"] for f in doc["invariant_factors"]] == [
            "1",
            "1",
            "x^3-4*x^2+3*x",
        ]
        code, text = run_to_file(
            ["elementary-divisors", "--input", note23_file], tmp_path
        )
        assert code == 0
        divisors = json.loads(text)["elementary_divisors"]
        assert {d["irreducible"]["display"] for d in divisors} == {"x", "x-1", "x-3"}

    def test_diagonalizable_inertia_darboux(self, tmp_path, note23_file):
        code, text = run_to_file(
            ["diagonalizable", "--input", note23_file], tmp_path
        )
        assert code == 0 and json.loads(text)["diagonalizable"] is True
        code, text = run_to_file(["inertia", "--input", note23_file], tmp_path)
        doc = json.loads(text)
        assert (doc["positives"], doc["negatives"], doc["zeros"]) == (2, 0, 1)
        code, text = run_to_file(["darboux-steps", "--input", note23_file], tmp_path)
        steps = json.loads(text)["steps"]
        assert [(s["root"]["value"], s["jump"]) for s in steps] == [
            ("0/1", -1),
            ("1/1", -1),
            ("3/1", -1),
        ]

    def test_weierstrass_identity_pair(self, tmp_path):
        pair = write_json(
            tmp_path,
            "pair.json",
            {
                "phi": {"rows": 2, "cols": 2, "entries": ["1/1", "0/1", "0/1", "1/1"]},
                "psi": {"rows": 2, "cols": 2, "entries": ["1/1", "0/1", "0/1", "1/1"]},
            },
        )
        code, text = run_to_file(["weierstrass-reduce", "--input", pair], tmp_path)
        assert code == 0
        doc = json.loads(text)
        assert len(doc["components"]) == 1
        assert doc["verified"] is True
        assert doc["provenance"]["source"] == "weierstrass-1858"

    def test_expm(self, tmp_path):
        mat = write_json(
            tmp_path,
            "diag.json",
            {"rows": 2, "cols": 2, "entries": ["1/1", "0/1", "0/1", "2/1"]},
        )
        code, text = run_to_file(["expm", "--input", mat, "--time", "1.0"], tmp_path)
        assert code == 0
        E = json.loads(text)["exponential"]
        assert E[0][0] == pytest.approx(math.e, rel=1e-12)
        assert E[1][1] == pytest.approx(math.e**2, rel=1e-12)

    def test_classify_and_solve_and_trajectory(self, tmp_path):
        scen = write_json(
            tmp_path,
            "yvon.json",
            {
                "kind": "yvon-villarceau-2dof",
                "parameters": {"g": "1", "f": "1", "a": "0", "c": "1"},
                "initial": {
                    "positions": ["1/10", "0/1"],
                    "velocities": ["0/1", "0/1"],
                },
                "t_grid": {"t_max": 6.283, "steps": 100},
            },
        )
        code, text = run_to_file(["classify", "--input", scen], tmp_path)
        assert code == 0
        doc = json.loads(text)
        assert doc["historical"]["verdict"] == "conditional"
        assert doc["corrected"]["verdict"] == "stable"
        assert doc["agreement"] is False

        code, text = run_to_file(["solve", "--input", scen], tmp_path)
        assert code == 0
        doc = json.loads(text)
        assert doc["path"] == "exact"
        assert len(doc["modes"]) == 2

        code, text = run_to_file(
            ["solve", "--input", scen, "--method", "jordan"], tmp_path
        )
        assert code == 0
        doc = json.loads(text)
        assert doc["provenance"]["source"] == "jordan-1871"
        assert all(b["chain_length"] >= 1 for b in doc["blocks"])

        code, text = run_to_file(
            ["trajectory", "--input", scen], tmp_path, "traj.csv"
        )
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0] == "t,y1,y2"
        assert len(lines) == 102


class TestWidthFlag:
    def test_roots_width_override(self, tmp_path):
        doc = write_json(
            tmp_path,
            "m.json",
            {"rows": 2, "cols": 2, "entries": ["0/1", "2/1", "1/1", "0/1"]},
        )
        code, text = run_to_file(
            ["roots", "--input", doc, "--width", "1/1000"], tmp_path
        )
        assert code == 0
        roots = json.loads(text)["roots"]
        assert all(r["kind"] == "isolated" for r in roots)
        for r in roots:
            lo = parse_fraction(r["interval"][0])
            hi = parse_fraction(r["interval"][1])
            assert hi - lo < parse_fraction("1/1000")
        approxs = sorted(r["approx"] for r in roots)
        assert approxs[0] == pytest.approx(-math.sqrt(2), abs=1e-3)
        assert approxs[1] == pytest.approx(math.sqrt(2), abs=1e-3)


class TestDeterminism:
    def test_byte_identical_repeats(self, tmp_path, note23_file):
        _, first = run_to_file(["roots", "--input", note23_file], tmp_path, "a.json")
        _, second = run_to_file(["roots", "--input", note23_file], tmp_path, "b.json")
        assert first == second

    def test_trajectory_determinism(self, tmp_path):
        scen = write_json(
            tmp_path,
            "springs.json",
            {
                "kind": "coupled-springs",
                "parameters": {"m": "1", "k": "1", "k0": "1"},
                "initial": {"positions": ["1/1", "0/1"],
                            "velocities": ["0/1", "0/1"]},
                "t_grid": {"t_max": 10, "steps": 100},
            },
        )
        _, a = run_to_file(["trajectory", "--input", scen], tmp_path, "a.csv")
        _, b = run_to_file(["trajectory", "--input", scen], tmp_path, "b.csv")
        assert a == b


class TestExitCodes:
    def test_parse_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{ not json")
        assert run(["roots", "--input", str(bad)]) == 2

    def test_malformed_matrix(self, tmp_path):
        doc = write_json(
            tmp_path, "m.json", {"rows": 2, "cols": 2, "entries": ["1/1"]}
        )
        assert run(["charpoly", "--input", doc]) == 2

    def test_precondition_singular_pencil(self, tmp_path):
        doc = write_json(
            tmp_path,
            "z.json",
            {
                "A": {"rows": 1, "cols": 1, "entries": ["0/1"]},
                "B": {"rows": 1, "cols": 1, "entries": ["0/1"]},
                "orientation": "sA-B",
            },
        )
        assert run(["roots", "--input", doc]) == 3

    def test_precondition_indefinite_pair(self, tmp_path):
        doc = write_json(
            tmp_path,
            "pair.json",
            {
                "phi": {"rows": 2, "cols": 2,
                        "entries": ["1/1", "0/1", "0/1", "-1/1"]},
                "psi": {"rows": 2, "cols": 2,
                        "entries": ["1/1", "0/1", "0/1", "1/1"]},
            },
        )
        assert run(["weierstrass-reduce", "--input", doc]) == 3

    def test_path_unavailable(self, tmp_path):
        doc = write_json(
            tmp_path,
            "m.json",
            {"rows": 2, "cols": 2, "entries": ["0/1", "1/1", "1/1", "1/1"]},
        )
        assert (
            run(
                [
                    "eigvec",
                    "--input", doc,
                    "--root-index", "1",
                    "--path", "exact",
                ]
            )
            == 4
        )
