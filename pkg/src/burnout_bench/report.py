"""Tabular outputs for the CLI: competitive parameters, fatigue series, score
inputs and the markdown summary. Every CSV writer has a matching reader."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import __version__
from .constraints import ViolationReport
from .fatigue import (
    FatigueTimeline,
    RestUtilization,
    avg_peak_fatigue,
    build_timeline,
    fatigue_cdf,
    fatigue_histogram,
    max_fatigue,
    peak_separation,
    prior_avg_fatigue,
    rest_rmse,
    team_rest_utilization,
)
from .metrics import CompetitiveSummary, home_points, itinerary, summarize
from .schedule import Schedule
from .scoring import FairnessScorecard, TeamInputs


def _num(x: float) -> str:
    return format(x, ".10g")


def _write(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _read(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def streak_label(p: tuple[int, int]) -> str:
    return f"{p[0]}in{p[1]}"


def violations_csv(rep: ViolationReport, names: Sequence[str]) -> str:
    return _write(
        ["constraint", "teams", "slots", "measured", "sense", "bound", "detail"],
        (
            [str(v.constraint_id), " ".join(names[t] for t in v.subjects), " ".join(map(str, v.slots)),
             v.measured, v.sense, v.bound, v.detail]
            for v in rep.violations
        ),
    )


# -- competitive parameters ----------------------------------------------------


def venues_csv(schedule: Schedule, summaries: Sequence[CompetitiveSummary]) -> str:
    cfg = schedule.config
    rows = []
    for s in summaries:
        it = itinerary(schedule, s.team)
        seq = "".join(cfg.venues[v].code for v in it.venue_sequence)
        rows.append(
            [cfg.teams[s.team].abbrev, seq, s.total_travel, s.home_games, s.secondary_home_games,
             s.lost_home_games]
        )
    return _write(
        ["team", "venues", "total_travel", "home_games", "secondary_home_games", "lost_home_games"], rows
    )


def read_venues_csv(text: str) -> dict[str, dict]:
    out = {}
    for r in _read(text):
        out[r["team"]] = {
            "venues": r["venues"],
            **{k: int(r[k]) for k in ("total_travel", "home_games", "secondary_home_games", "lost_home_games")},
        }
    return out


def rest_csv(schedule: Schedule, summaries: Sequence[CompetitiveSummary]) -> str:
    pats = list(summaries[0].streaks) if summaries else []
    rows = []
    for s in summaries:
        rows.append(
            [schedule.config.teams[s.team].abbrev, s.span_days, s.no_game_days,
             _num(float(s.avg_games_per_day)), s.rest_days_net, *(s.streaks[p] for p in pats)]
        )
    return _write(
        ["team", "span_days", "no_game_days", "avg_games_per_day", "rest_days_net",
         *(streak_label(p) for p in pats)],
        rows,
    )


def read_rest_csv(text: str) -> dict[str, dict]:
    out = {}
    for r in _read(text):
        rec: dict = {"avg_games_per_day": float(r.pop("avg_games_per_day"))}
        team = r.pop("team")
        rec.update({k: int(v) for k, v in r.items()})
        out[team] = rec
    return out


# -- fatigue ------------------------------------------------------------------


@dataclass(frozen=True)
class TeamFatigue:
    team: int
    timeline: FatigueTimeline
    rest: RestUtilization
    max: float
    avg_peak: float
    prior_avg: float
    peak_separation: float
    rmse: float


def team_fatigue(schedule: Schedule) -> list[TeamFatigue]:
    out = []
    for t in range(schedule.config.n):
        tl = build_timeline(schedule, t)
        ru = team_rest_utilization(schedule, t)
        out.append(
            TeamFatigue(
                t, tl, ru, max_fatigue(tl), avg_peak_fatigue(tl), prior_avg_fatigue(tl),
                peak_separation(tl), rest_rmse(ru),
            )
        )
    return out


def timeline_csv(tl: FatigueTimeline) -> str:
    return _write(["hour", "fatigue"], ((h, _num(v)) for h, v in enumerate(tl.samples.tolist())))


def read_timeline_csv(text: str) -> list[float]:
    return [float(r["fatigue"]) for r in _read(text)]


def fatigue_summary_csv(names: Sequence[str], rows: Sequence[TeamFatigue]) -> str:
    return _write(
        ["team", "max_fatigue", "avg_peak_fatigue", "prior_avg_fatigue", "peak_separation_hours", "rest_rmse"],
        (
            [n, _num(f.max), _num(f.avg_peak), _num(f.prior_avg), _num(f.peak_separation), _num(f.rmse)]
            for n, f in zip(names, rows)
        ),
    )


def read_fatigue_summary_csv(text: str) -> dict[str, dict[str, float]]:
    return {r.pop("team"): {k: float(v) for k, v in r.items()} for r in _read(text)}


def histogram_csv(names: Sequence[str], rows: Sequence[TeamFatigue], bins: int) -> str:
    out = []
    for n, f in zip(names, rows):
        for (lo, hi), c in fatigue_histogram(f.timeline, bins):
            out.append([n, _num(lo), _num(hi), c])
    return _write(["team", "lo", "hi", "count"], out)


def cdf_csv(names: Sequence[str], rows: Sequence[TeamFatigue]) -> str:
    out = []
    for n, f in zip(names, rows):
        out += [[n, _num(v), _num(p)] for v, p in fatigue_cdf(f.timeline)]
    return _write(["team", "value", "fraction"], out)


def rest_utilization_csv(names: Sequence[str], rows: Sequence[TeamFatigue]) -> str:
    out = []
    for n, f in zip(names, rows):
        for k, (used, ideal) in enumerate(zip(f.rest.per_game_cumulative, f.rest.ideal), 1):
            out.append([n, k, used, _num(ideal)])
    return _write(["team", "game", "used", "trend"], out)


def read_series_csv(text: str) -> dict[str, list[dict[str, str]]]:
    """Group any of the per-team series CSVs by team."""
    out: dict[str, list[dict[str, str]]] = {}
    for r in _read(text):
        out.setdefault(r.pop("team"), []).append(r)
    return out


# -- scoring ------------------------------------------------------------------


def score_inputs(
    schedule: Schedule,
    summaries: Sequence[CompetitiveSummary] | None = None,
    fatigue: Sequence[TeamFatigue] | None = None,
) -> dict[str, TeamInputs]:
    """Scoring inputs measured on a schedule."""
    summaries = summaries or summarize(schedule)
    fatigue = fatigue or team_fatigue(schedule)
    out = {}
    for s, f in zip(summaries, fatigue):
        out[schedule.config.teams[s.team].abbrev] = TeamInputs(
            rmse=f.rmse,
            prior_avg_fatigue=f.prior_avg,
            avg_peak_fatigue=f.avg_peak,
            travel=s.total_travel,
            rest_days_net=s.rest_days_net,
            home_points=home_points(schedule, s.team),
        )
    return out


# -- markdown -----------------------------------------------------------------


def _md_table(text: str) -> str:
    rows = list(csv.reader(io.StringIO(text)))
    lines = ["| " + " | ".join(rows[0]) + " |", "|" + "---|" * len(rows[0])]
    lines += ["| " + " | ".join(r) + " |" for r in rows[1:]]
    return "\n".join(lines)


def markdown_report(
    title: str,
    sections: Sequence[tuple[str, str]],
    figures: Sequence[str] = (),
    scorecard: FairnessScorecard | None = None,
    notes: Sequence[str] = (),
) -> str:
    """Assemble the summary. ``sections`` are (heading, csv text) pairs."""
    parts = [f"# {title}", "", f"_burnout-bench {__version__}_", ""]
    parts += [f"- {n}" for n in notes]
    if notes:
        parts.append("")
    for heading, text in sections:
        parts += [f"## {heading}", "", _md_table(text), ""]
    if scorecard is not None:
        parts += [f"**{scorecard.summary_line()}**", ""]
    if figures:
        parts += ["## Figures", ""]
        parts += [f"![{f}]({f})" for f in figures]
        parts.append("")
    return "\n".join(parts)
