"""Command line interface: subcommands, exit codes, deterministic bytes."""

import contextlib
import io
import json
from fractions import Fraction as F

import pytest

import blockinv.cli as cli
from blockinv.graphs import Graph, distance_matrix, format_edge_list, parse_edge_list
from blockinv.linalg import matrix_from_csv


def run_cli(argv, monkeypatch=None, env=None):
    """Invoke main() in process, capturing exit code and both streams."""
    if env and monkeypatch:
        for k, v in env.items():
            monkeypatch.setenv(k, v)
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(argv)
    return code, out.getvalue(), err.getvalue()


TRIANGLE_EDGES = "a -> b 1\nb -> c 1\nc -> a 1\n"

GLUED_MIXED_EDGES = (
    "a -> b 1\nb -> c 1\nc -> a -1/2\na -- t 1\n"
)

DOUBLE_ZERO_EDGES = (
    "a -> b 1\nb -> c 1\nc -> a -1/2\n"
    "a -> p 1\np -> q 1\nq -> a -1/2\n"
)


@pytest.fixture
def triangle_file(tmp_path):
    p = tmp_path / "triangle.edges"
    p.write_text(TRIANGLE_EDGES)
    return str(p)


class TestDmat:
    def test_csv_bytes(self, triangle_file):
        code, out, err = run_cli(["dmat", triangle_file])
        assert code == 0
        assert out == "0,1,2\n2,0,1\n1,2,0\n"
        assert err == ""

    def test_json(self, triangle_file):
        code, out, _ = run_cli(["dmat", triangle_file, "--format", "json"])
        assert code == 0
        doc = json.loads(out)
        assert doc["labels"] == ["a", "b", "c"]
        assert doc["matrix"][0] == ["0", "1", "2"]

    def test_deterministic(self, triangle_file):
        first = run_cli(["dmat", triangle_file, "--format", "json"])
        second = run_cli(["dmat", triangle_file, "--format", "json"])
        assert first == second

    def test_out_file(self, triangle_file, tmp_path):
        dest = tmp_path / "d.csv"
        code, out, _ = run_cli(["dmat", triangle_file, "--out", str(dest)])
        assert code == 0
        assert out == ""
        assert dest.read_text() == "0,1,2\n2,0,1\n1,2,0\n"

    def test_signed_graph(self, tmp_path):
        p = tmp_path / "g.edges"
        p.write_text(GLUED_MIXED_EDGES)
        code, out, _ = run_cli(["dmat", str(p)])
        assert code == 0
        m = matrix_from_csv(out)
        assert m.rows[0][2] == 2  # a -> c along the cycle


class TestBlocks:
    def test_triangle(self, triangle_file):
        code, out, _ = run_cli(["blocks", triangle_file])
        assert code == 0
        doc = json.loads(out)
        assert doc["structure"] == {"n": 3, "block_sizes": [3]}
        assert doc["blocks"] == [["a", "b", "c"]]
        assert doc["cut_vertices"] == []


class TestInvert:
    def test_triangle_check(self, triangle_file):
        code, out, _ = run_cli(["invert", triangle_file, "--check"])
        assert code == 0
        doc = json.loads(out)
        assert doc["lambda"] == "1"
        assert doc["invertible"] is True
        # -(1/3)(I - P) + (1/9)J, first row
        assert doc["inverse"][0] == ["-2/9", "4/9", "1/9"]

    def test_zero_lambda_reports_singular(self, tmp_path):
        p = tmp_path / "g.edges"
        p.write_text(DOUBLE_ZERO_EDGES)
        code, out, _ = run_cli(["invert", str(p), "--check"])
        assert code == 0
        doc = json.loads(out)
        assert doc["invertible"] is False
        assert doc["det"] == "0"
        assert doc["inverse"] is None

    def test_matrix_entry_point(self, tmp_path):
        p = tmp_path / "m.csv"
        p.write_text("0,3\n5,0\n")
        code, out, _ = run_cli(["invert", "--matrix", str(p), "--check"])
        assert code == 0
        doc = json.loads(out)
        assert doc["lambda"] == "15/8"
        assert doc["inverse"] == [["0", "1/5"], ["1/3", "0"]]

    def test_requires_exactly_one_input(self, triangle_file, tmp_path):
        p = tmp_path / "m.csv"
        p.write_text("0,1\n1,0\n")
        code, _, err = run_cli(["invert", triangle_file, "--matrix", str(p)])
        assert code == 2
        assert "exactly one" in err
        code, _, err = run_cli(["invert"])
        assert code == 2


class TestDet:
    def test_both_agree(self, triangle_file):
        code, out, _ = run_cli(["det", triangle_file])
        assert code == 0
        doc = json.loads(out)
        assert doc["formula"] == {"det": "9", "cof": "9"}
        assert doc["oracle"] == {"det": "9", "cof": "9"}
        assert doc["agree"] is True

    def test_tree_n6(self, tmp_path):
        code, out, _ = run_cli(["gen", "tree", "--n", "6", "--seed", "3",
                                "--out", str(tmp_path / "t.edges")])
        assert code == 0
        code, out, _ = run_cli(["det", str(tmp_path / "t.edges")])
        assert code == 0
        doc = json.loads(out)
        assert doc["formula"]["det"] == "-80"
        assert doc["agree"] is True

    def test_non_cactoid_formula_is_input_error(self, tmp_path):
        p = tmp_path / "k3.edges"
        p.write_text("a -- b 1\nb -- c 1\nc -- a 1\n")
        code, _, err = run_cli(["det", str(p), "--method", "formula"])
        assert code == 2
        assert "error:" in err

    def test_non_cactoid_oracle_still_works(self, tmp_path):
        p = tmp_path / "k3.edges"
        p.write_text("a -- b 1\nb -- c 1\nc -- a 1\n")
        code, out, _ = run_cli(["det", str(p), "--method", "oracle"])
        assert code == 0
        doc = json.loads(out)
        assert doc["oracle"] == {"det": "2", "cof": "3"}

    def test_matrix_oracle_only(self, tmp_path):
        p = tmp_path / "m.csv"
        p.write_text("0,1\n1,0\n")
        code, out, _ = run_cli(["det", "--matrix", str(p), "--method", "oracle"])
        assert code == 0
        assert json.loads(out) == {
            "method": "oracle", "det": "-1", "cof": "-2"
        }
        code, _, err = run_cli(["det", "--matrix", str(p)])
        assert code == 2
        assert "oracle" in err

    def test_disagreement_exits_one(self, triangle_file, monkeypatch):
        # force a wrong closed form to prove the mismatch path reports it
        monkeypatch.setattr(cli, "cactoid_det", lambda g: (F(1), F(1)))
        code, out, err = run_cli(["det", triangle_file])
        assert code == 1
        assert json.loads(out)["agree"] is False
        assert "disagree" in err


class TestVerify:
    def test_triangle(self, triangle_file):
        code, out, _ = run_cli(["verify", triangle_file])
        assert code == 0
        doc = json.loads(out)
        assert doc["composed"] == {"lambda": "1", "left_ok": True,
                                   "right_ok": True}
        assert doc["classification"]["invertible"] is True

    def test_zero_lambda_block_flagged(self, tmp_path):
        p = tmp_path / "g.edges"
        p.write_text(GLUED_MIXED_EDGES)
        code, out, _ = run_cli(["verify", str(p)])
        assert code == 0
        doc = json.loads(out)
        lams = sorted(b["lambda"] for b in doc["per_block"])
        assert lams == ["0", "1/2"]
        assert all(b["left_ok"] and b["right_ok"] for b in doc["per_block"])
        assert doc["composed"]["left_ok"] is True

    def test_matrix_zero_row(self, tmp_path):
        p = tmp_path / "m.csv"
        p.write_text("0,0\n1,0\n")
        code, out, _ = run_cli(["verify", "--matrix", str(p)])
        assert code == 0
        doc = json.loads(out)
        assert doc["classification"] == {
            "invertible": False,
            "left_expressible": False,
            "right_expressible": False,
        }

    def test_guaranteed_failure_exits_one(self, triangle_file, monkeypatch):
        import blockinv.bags as bags

        broken = bags.BagVerdict(False, False, (("alpha_sum", F(1)),))
        monkeypatch.setattr(cli, "verify_bag", lambda bag: broken)
        code, _, err = run_cli(["verify", triangle_file])
        assert code == 1
        assert "guarantees" in err


class TestGen:
    def test_deterministic_bytes(self):
        a = run_cli(["gen", "cactoid", "--seed", "11", "--weights", "positive"])
        b = run_cli(["gen", "cactoid", "--seed", "11", "--weights", "positive"])
        assert a == b
        assert a[0] == 0

    def test_env_seed_overrides(self, monkeypatch):
        plain = run_cli(["gen", "cactoid", "--seed", "1"])
        monkeypatch.setenv("BLOCKINV_SEED", "2")
        overridden = run_cli(["gen", "cactoid", "--seed", "1"])
        direct = run_cli(["gen", "cactoid", "--seed", "2"])
        assert overridden == direct
        assert overridden != plain

    def test_edge_list_round_trips(self):
        code, out, _ = run_cli(["gen", "cactoid", "--seed", "5",
                                "--weights", "signed", "--bound", "7"])
        assert code == 0
        g = parse_edge_list(out)
        assert format_edge_list(g) == out

    def test_json_format(self):
        code, out, _ = run_cli(["gen", "tree", "--n", "4", "--seed", "0",
                                "--format", "json"])
        assert code == 0
        doc = json.loads(out)
        assert len(doc["vertices"]) == 4

    def test_zero_lambda_flag_needs_signed(self):
        code, _, err = run_cli(["gen", "cactoid", "--zero-lambda-block"])
        assert code == 2
        assert "error:" in err


class TestInputErrors:
    def test_missing_file(self):
        code, _, err = run_cli(["dmat", "/nonexistent/g.edges"])
        assert code == 2
        assert "error:" in err

    def test_malformed_edge_list(self, tmp_path):
        p = tmp_path / "bad.edges"
        p.write_text("a => b 1\n")
        code, _, err = run_cli(["dmat", str(p)])
        assert code == 2

    def test_not_strongly_connected(self, tmp_path):
        p = tmp_path / "oneway.edges"
        p.write_text("a -> b 1\n")
        code, _, err = run_cli(["dmat", str(p)])
        assert code == 2
        assert "error:" in err

    def test_bad_matrix_literal(self, tmp_path):
        p = tmp_path / "m.csv"
        p.write_text("0,0.5\n1,0\n")
        code, _, err = run_cli(["det", "--matrix", str(p), "--method", "oracle"])
        assert code == 2


class TestRoundTrip:
    def test_gen_dmat_invert_check(self, tmp_path):
        """gen, dmat, and invert --check chain cleanly over 200 cactoids."""
        for seed in range(200):
            gf = tmp_path / f"g{seed}.edges"
            code, _, err = run_cli([
                "gen", "cactoid",
                "--seed", str(seed),
                "--blocks", str(1 + seed % 5),
                "--min-len", "2", "--max-len", "6",
                "--weights", "positive", "--bound", "10",
                "--out", str(gf),
            ])
            assert code == 0, err
            code, out, err = run_cli(["dmat", str(gf)])
            assert code == 0, err
            d = matrix_from_csv(out)
            g = parse_edge_list(gf.read_text())
            assert d == distance_matrix(g)
            code, _, err = run_cli(["invert", str(gf), "--check"])
            assert code == 0, err
