import json

import numpy as np
import pytest

from burnout_bench import cli, report
from burnout_bench.fatigue import build_timeline
from burnout_bench.schedule import bundled_path, dumps_schedule

TEAMS = ["IU", "KK", "LQ", "MS", "PZ", "QG"]


@pytest.fixture
def out(tmp_path, monkeypatch):
    monkeypatch.delenv(cli.ENV_OUT, raising=False)
    monkeypatch.chdir(tmp_path)
    return tmp_path / "out"


class TestExitCodes:
    def test_validate_passes(self, out, capsys):
        assert cli.main(["validate", "--constraints", "mrr,onegameperslot", "--rounds", "2"]) == 0
        assert "overall" in capsys.readouterr().out

    def test_validate_fails(self, out):
        assert cli.main(["validate", "--constraints", "srr"]) == 2

    @pytest.mark.parametrize(
        "argv",
        [
            ["validate", "--constraints", "nosuch"],
            ["validate", "--rounds", "0"],
            ["params", "--schedule", "missing.csv"],
            ["params", "--streaks", "two"],
            ["fatigue", "--bins", "0"],
            ["score", "--inputs", "missing.csv"],
            ["frobnicate"],
            ["params", "--mode", "sometimes"],
        ],
    )
    def test_usage_errors(self, out, argv, capsys):
        assert cli.main(argv) == 1
        assert capsys.readouterr().err

    def test_empty_schedule(self, out, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("date,slot_of_day,home_abbrev,away_abbrev,venue_code\n")
        assert cli.main(["params", "--schedule", str(p)]) == 1

    def test_malformed_schedule(self, out, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("date,slot_of_day,home_abbrev,away_abbrev,venue_code\n2020-02-20,0,IU,XX,K\n")
        assert cli.main(["params", "--schedule", str(p)]) == 1


class TestScore:
    def test_published_inputs(self, out, capsys):
        assert cli.main(["score"]) == 0
        text = capsys.readouterr().out
        totals = [int(line.split(",")[-1]) for line in text.splitlines()[1:7]]
        assert totals == [18, 30, 32, 14, 23, 15]
        assert "most favored overall: LQ" in text
        assert not out.exists()

    def test_measured_inputs(self, out, capsys):
        path = bundled_path("psl5.csv")
        assert cli.main(["score", "--schedule", str(path), "--out", str(out)]) == 0
        assert "LQ" in capsys.readouterr().out
        assert {p.name for p in out.iterdir()} == {"score_inputs.csv", "score.csv", "score.json"}

    def test_inputs_file(self, out, tmp_path, capsys):
        p = tmp_path / "in.csv"
        p.write_text(bundled_path("psl5_published_inputs.csv").read_text())
        assert cli.main(["score", "--inputs", str(p)]) == 0
        assert "LQ" in capsys.readouterr().out

    def test_bad_inputs_file(self, out, tmp_path):
        p = tmp_path / "in.csv"
        p.write_text("team,rmse\nIU,1\n")
        assert cli.main(["score", "--inputs", str(p)]) == 1


class TestOutputs:
    def test_env_var_sets_directory(self, tmp_path, monkeypatch):
        target = tmp_path / "from_env"
        monkeypatch.setenv(cli.ENV_OUT, str(target))
        assert cli.main(["params", "--format", "csv"]) == 0
        assert sorted(p.name for p in target.iterdir()) == ["rest_streaks.csv", "venues.csv"]

    def test_default_directory(self, out, tmp_path):
        assert cli.main(["params", "--format", "csv"]) == 0
        assert (tmp_path / cli.DEFAULT_OUT / "venues.csv").is_file()

    def test_params_csv_reingests(self, out, psl5):
        assert cli.main(["params", "--out", str(out), "--streaks", "5in8"]) == 0
        venues = report.read_venues_csv((out / "venues.csv").read_text())
        assert venues["LQ"] == {
            "venues": "LLRLLLLLKL", "total_travel": 4, "home_games": 8,
            "secondary_home_games": 0, "lost_home_games": 0,
        }
        rest = report.read_rest_csv((out / "rest_streaks.csv").read_text())
        assert [rest[t]["rest_days_net"] for t in TEAMS] == [9, 10, 10, 8, 8, 9]
        assert rest["PZ"]["6in11"] == 2 and "5in8" in rest["PZ"]
        assert (out / "fig_parameters.svg").read_text().startswith("<?xml")

    def test_fatigue_csv_reingests(self, out, psl5):
        assert cli.main(["fatigue", "--out", str(out), "--format", "csv", "--bins", "7"]) == 0
        tl = build_timeline(psl5, 3)
        again = report.read_timeline_csv((out / "timeline_MS.csv").read_text())
        np.testing.assert_allclose(again, tl.samples, rtol=0, atol=1e-9)
        summary = report.read_fatigue_summary_csv((out / "fatigue_summary.csv").read_text())
        assert summary["MS"]["max_fatigue"] == pytest.approx(tl.samples.max(), abs=1e-9)
        hist = report.read_series_csv((out / "fatigue_histogram.csv").read_text())
        assert all(len(rows) == 7 for rows in hist.values())
        assert sum(int(r["count"]) for r in hist["MS"]) == len(again)
        cdf = report.read_series_csv((out / "fatigue_cdf.csv").read_text())
        assert float(cdf["MS"][-1]["fraction"]) == 1.0
        rest = report.read_series_csv((out / "rest_utilization.csv").read_text())
        assert len(rest["IU"]) == 10

    def test_validate_files(self, out):
        assert cli.main(["validate", "--out", str(out), "--constraints", "srr"]) == 2
        doc = json.loads((out / "violations.json").read_text())
        assert doc["passed"] is False and len(doc["violations"]) == 15
        assert (out / "violations.csv").read_text().count("\n") == 16

    def test_json_schedule(self, out, psl5, tmp_path):
        p = tmp_path / "s.json"
        p.write_text(dumps_schedule(psl5, "json"))
        assert cli.main(["validate", "--schedule", str(p), "--constraints", "mrr"]) == 0

    def test_report_contents(self, out):
        assert cli.main(["report", "--out", str(out)]) == 0
        names = {p.name for p in out.iterdir()}
        assert len(names) == 24
        assert {f"timeline_{t}.csv" for t in TEAMS} <= names
        md = (out / "report.md").read_text()
        for fig in sorted(n for n in names if n.endswith(".svg")):
            assert fig in md

    def test_report_markdown_only(self, out):
        assert cli.main(["report", "--out", str(out), "--format", "md"]) == 0
        assert [p.name for p in out.iterdir()] == ["report.md"]


def test_module_entry_point():
    import subprocess
    import sys

    r = subprocess.run([sys.executable, "-m", "burnout_bench", "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "validate" in r.stdout
