"""Command-line front end.

    burnout-bench validate --constraints mrr --rounds 2
    burnout-bench params --out out/
    burnout-bench fatigue --bins 20 --out out/
    burnout-bench score --inputs psl5
    burnout-bench report --out out/

Without ``--schedule`` the bundled PSL-5 fixture is used. Exit codes: 0 ok,
1 usage or input error, 2 constraint violations under ``validate``.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from . import plotting, report
from .constraints import parse_selection, validate_all
from .fatigue import fatigue_cdf, fatigue_histogram
from .metrics import STREAK_MODES, parse_streaks, summarize
from .schedule import Schedule, ScheduleError, bundled_path, load_config, load_schedule
from .scoring import FairnessScorecard, inputs_from_csv, inputs_to_csv, score

EXIT_OK, EXIT_USAGE, EXIT_INVALID = 0, 1, 2
FORMATS = ("csv", "json", "svg", "md")
ENV_OUT = "BURNOUT_BENCH_OUT"
DEFAULT_OUT = "burnout-report"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--schedule", help="schedule file (.csv or .json); default: bundled PSL-5")
    common.add_argument("--config", help="tournament config JSON (CSV schedules default to the PSL-5 config)")
    common.add_argument("--out", help=f"output directory (default: ${ENV_OUT} or ./{DEFAULT_OUT})")
    common.add_argument(
        "--format", action="append", choices=FORMATS,
        help="artifact kinds to write; repeatable (default: all that apply)",
    )
    common.add_argument("--constraints", default="all", help="constraint ids, comma separated, or 'all'")
    common.add_argument("--rounds", type=int, help="override the config's round count")
    common.add_argument("--streaks", default="", help="extra XinY patterns, e.g. 5in8,3in3")
    common.add_argument("--bins", type=int, default=10, help="fatigue histogram bins")
    common.add_argument("--mode", choices=STREAK_MODES, default="greedy", help="streak counting mode")
    common.add_argument("--inputs", help="score inputs CSV, or 'psl5' for the published PSL-5 values")

    ap = _Parser(prog="burnout-bench", description="fairness analysis of round-robin schedules")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, text in (
        ("validate", "check the schedule against the constraint catalogue"),
        ("params", "venue sequences, travel, home games, rest days and streaks"),
        ("fatigue", "fatigue timelines, histograms, CDFs and rest utilization"),
        ("score", "points table naming the most favored team"),
        ("report", "everything above plus a markdown summary"),
    ):
        sub.add_parser(name, parents=[common], help=text, description=text)
    return ap


# -- helpers --------------------------------------------------------------------


def _load(args) -> Schedule:
    config = load_config(args.config) if args.config else None
    if not args.schedule:
        return load_schedule(bundled_path("psl5.csv"), config or bundled_path("psl5_config.json"))
    path = Path(args.schedule)
    if not path.is_file():
        raise UsageError(f"schedule file not found: {path}")
    if config is None and path.suffix.lower() == ".csv":
        config = load_config(bundled_path("psl5_config.json"))
    sched = load_schedule(path, config)
    if not sched.games:
        raise UsageError(f"schedule {path} has no games")
    return sched


def _out_dir(args) -> Path:
    out = Path(args.out or os.environ.get(ENV_OUT) or DEFAULT_OUT)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _formats(args) -> set[str]:
    return set(args.format or FORMATS)


class _Writer:
    """Collects written files so the report can list them."""

    def __init__(self, out: Path):
        self.out = out
        self.files: list[str] = []

    def text(self, name: str, content: str) -> None:
        (self.out / name).write_text(content, encoding="utf-8")
        self.files.append(name)

    def figure(self, name: str, fig) -> None:
        plotting.save_svg(fig, self.out / name)
        self.files.append(name)


def _names(schedule: Schedule) -> list[str]:
    return [t.abbrev for t in schedule.config.teams]


# -- commands -----------------------------------------------------------------


def _validate(args, schedule: Schedule, w: _Writer | None, fmts: set[str]):
    try:
        sel = parse_selection(args.constraints)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.rounds is not None and args.rounds < 1:
        raise UsageError("--rounds must be positive")
    rep = validate_all(schedule, sel, args.rounds)
    names = _names(schedule)
    table = rep.to_table(names)
    if w is not None:
        if "csv" in fmts:
            w.text("violations.csv", report.violations_csv(rep, names))
        if "json" in fmts:
            w.text("violations.json", rep.to_json(names))
    return rep, table


def _params(args, schedule: Schedule, w: _Writer, fmts: set[str]):
    try:
        extra = parse_streaks(args.streaks)
    except ValueError as e:
        raise UsageError(str(e)) from None
    sums = summarize(schedule, extra, args.mode)
    venues = report.venues_csv(schedule, sums)
    rest = report.rest_csv(schedule, sums)
    if "csv" in fmts:
        w.text("venues.csv", venues)
        w.text("rest_streaks.csv", rest)
    if "svg" in fmts:
        params = {
            "travel": [s.total_travel for s in sums],
            "home games": [s.home_games + s.secondary_home_games for s in sums],
            "no-game days": [s.no_game_days for s in sums],
            "streaks": [s.total_streaks for s in sums],
        }
        w.figure("fig_parameters.svg", plotting.parameters_figure(_names(schedule), params))
    return sums, venues, rest


def _fatigue(args, schedule: Schedule, w: _Writer, fmts: set[str]):
    if args.bins < 1:
        raise UsageError("--bins must be >= 1")
    names = _names(schedule)
    rows = report.team_fatigue(schedule)
    summary = report.fatigue_summary_csv(names, rows)
    if "csv" in fmts:
        for n, f in zip(names, rows):
            w.text(f"timeline_{n}.csv", report.timeline_csv(f.timeline))
        w.text("fatigue_summary.csv", summary)
        w.text("fatigue_histogram.csv", report.histogram_csv(names, rows, args.bins))
        w.text("fatigue_cdf.csv", report.cdf_csv(names, rows))
        w.text("rest_utilization.csv", report.rest_utilization_csv(names, rows))
    if "svg" in fmts:
        w.figure("fig_curves.svg", plotting.curves_figure())
        w.figure("fig_timelines.svg", plotting.timelines_figure(names, [f.timeline for f in rows]))
        w.figure(
            "fig_histograms.svg",
            plotting.histograms_figure(names, [fatigue_histogram(f.timeline, args.bins) for f in rows]),
        )
        w.figure("fig_cdf.svg", plotting.cdf_figure(names, [fatigue_cdf(f.timeline) for f in rows]))
        w.figure("fig_rest_utilization.svg", plotting.rest_figure(names, [f.rest for f in rows]))
    return rows, summary


def _score(args, schedule_loader, w: _Writer | None, fmts: set[str], sums=None, fat=None):
    published = args.inputs is None and not args.schedule and args.command == "score"
    if args.inputs == "psl5" or published:
        inputs = inputs_from_csv(bundled_path("psl5_published_inputs.csv").read_text(encoding="utf-8"))
    elif args.inputs:
        path = Path(args.inputs)
        if not path.is_file():
            raise UsageError(f"inputs file not found: {path}")
        try:
            inputs = inputs_from_csv(path.read_text(encoding="utf-8"))
        except (KeyError, ValueError) as e:
            raise UsageError(f"bad inputs file {path}: {e}") from None
    else:
        inputs = report.score_inputs(schedule_loader(), sums, fat)
    card = score(inputs)
    if w is not None:
        if "csv" in fmts:
            w.text("score_inputs.csv", inputs_to_csv(inputs))
            w.text("score.csv", card.to_csv())
        if "json" in fmts:
            w.text("score.json", card.to_json())
    return card


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    fmts = _formats(args)
    cmd = args.command
    try:
        if cmd == "score":
            # published inputs need no schedule
            w = _Writer(_out_dir(args)) if (args.out or os.environ.get(ENV_OUT)) else None
            card = _score(args, lambda: _load(args), w, fmts)
            sys.stdout.write(card.to_csv())
            print(card.summary_line())
            return EXIT_OK
        schedule = _load(args)
        if cmd == "validate":
            w = _Writer(_out_dir(args)) if (args.out or os.environ.get(ENV_OUT)) else None
            rep, table = _validate(args, schedule, w, fmts)
            sys.stdout.write(table)
            return EXIT_OK if rep.passed else EXIT_INVALID
        w = _Writer(_out_dir(args))
        if cmd == "params":
            _, venues, rest = _params(args, schedule, w, fmts)
            sys.stdout.write(venues + "\n" + rest)
            return EXIT_OK
        if cmd == "fatigue":
            _, summary = _fatigue(args, schedule, w, fmts)
            sys.stdout.write(summary)
            return EXIT_OK
        # report
        rep, _ = _validate(args, schedule, w, fmts)
        sums, venues, rest = _params(args, schedule, w, fmts)
        fat, summary = _fatigue(args, schedule, w, fmts)
        card: FairnessScorecard = _score(args, lambda: schedule, w, fmts, sums, fat)
        if "md" in fmts:
            figures = [f for f in w.files if f.endswith(".svg")]
            notes = [
                f"schedule: {Path(args.schedule).name if args.schedule else 'bundled PSL-5'}",
                f"teams: {schedule.config.n}, games: {len(schedule.games)}",
                f"constraint check: {'passed' if rep.passed else f'{len(rep.violations)} violations'}",
                f"score inputs: {args.inputs or 'measured on this schedule'}",
            ]
            if schedule.config.name == "psl5":
                notes.append(
                    "secondary-home games follow the home-and-away map (PZ 3, QG 2); "
                    "the higher counts of 4 and 3 sometimes quoted for this season are not reproduced"
                )
            md = report.markdown_report(
                f"Schedule fairness report: {schedule.config.name}",
                [
                    ("Venue sequences and travel", venues),
                    ("Rest days and streaks", rest),
                    ("Fatigue", summary),
                    ("Points", card.to_csv()),
                ],
                figures,
                card,
                notes,
            )
            w.text("report.md", md)
        print(f"wrote {len(w.files)} files to {w.out}")
        print(card.summary_line())
        return EXIT_OK
    except UsageError as e:
        print(f"burnout-bench: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ScheduleError, OSError, ValueError) as e:
        print(f"burnout-bench: {e}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
