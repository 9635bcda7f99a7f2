import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from pentagame.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture()
def runner():
    return CliRunner()


class TestSolve:
    def test_ht2_fair_and_early(self, runner):
        r = runner.invoke(main, ["solve", str(FIXTURES / "ht2.json")])
        assert r.exit_code == 0
        out = json.loads(r.output)
        assert out["fair"] is True and out["early"] is True

    def test_single_vertex_edge_all_true(self, runner):
        r = runner.invoke(main, ["solve", str(FIXTURES / "edge1.json")])
        assert r.exit_code == 0
        out = json.loads(r.output)
        assert all(out[k] for k in ("weak", "strong", "fair", "early", "humiliating"))

    def test_bad_file(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        r = runner.invoke(main, ["solve", str(bad)])
        assert r.exit_code == 1

    def test_classify_suite(self, runner):
        r = runner.invoke(
            main,
            [
                "classify-suite",
                str(FIXTURES / "ht2.json"),
                str(FIXTURES / "triangle.json"),
            ],
        )
        assert r.exit_code == 0
        rows = json.loads(r.output)
        assert [row["file"] for row in rows] == ["ht2.json", "triangle.json"]
        # a single 3-edge is a draw: P2 can always take a vertex of it
        assert rows[1]["weak"] is False


class TestSimulate:
    def test_transcripts_and_determinism(self, runner, tmp_path):
        args = [
            "simulate",
            "--adversary",
            "Random",
            "--moves",
            "30",
            "--seeds",
            "1,2",
            "--out",
            str(tmp_path),
        ]
        r = runner.invoke(main, args)
        assert r.exit_code == 0, r.output
        summary = json.loads(r.output)
        assert len(summary) == 2
        assert all(row["p1_completed"] is False for row in summary)
        files = sorted(tmp_path.glob("*.jsonl"))
        assert len(files) == 2
        before = [f.read_bytes() for f in files]
        r2 = runner.invoke(main, args)
        assert r2.exit_code == 0
        assert [f.read_bytes() for f in files] == before
        assert r2.output == r.output


class TestLemma:
    def test_report_and_determinism(self, runner):
        args = ["lemma", "--samples", "500", "--seed", "3"]
        r1 = runner.invoke(main, args)
        r2 = runner.invoke(main, args)
        assert r1.exit_code == 0
        assert r1.output == r2.output
        out = json.loads(r1.output)
        assert out["counterexample"] is None
        assert out["min_over_samples_of_max_angle"] >= out["threshold"] - 1e-9


class TestVerifyLemmas:
    def test_small_suite_passes(self, runner):
        args = ["verify-lemmas", "--max-vertices", "5", "--instances", "15", "--seed", "7"]
        r = runner.invoke(main, args)
        assert r.exit_code == 0, r.output
        out = json.loads(r.output)
        assert out["pass"] is True
        assert len(out["rows"]) == 15
        assert all(row["no_p2_strong"] is True for row in out["rows"])
        # singleton boards are excluded from the humiliating-win claim
        assert all(
            row["no_humiliating"] in (True, "excluded") for row in out["rows"]
        )
        r2 = runner.invoke(main, args)
        assert r2.output == r.output
