"""Points-based weighting criterion that names the team a schedule favors most."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Mapping

ITEMS = ("rmse", "prior_fatigue", "peak_fatigue", "travel", "rest_days", "home_games")


@dataclass(frozen=True)
class TeamInputs:
    rmse: float
    prior_avg_fatigue: float
    avg_peak_fatigue: float
    travel: int
    rest_days_net: int
    home_points: int


@dataclass(frozen=True)
class TeamScore:
    team: str
    items: tuple[int, int, int, int, int, int]

    @property
    def fatigue_subtotal(self) -> int:
        return sum(self.items[:5])

    @property
    def total(self) -> int:
        return sum(self.items)


@dataclass(frozen=True)
class FairnessScorecard:
    rows: tuple[TeamScore, ...]

    def __getitem__(self, team: str) -> TeamScore:
        for r in self.rows:
            if r.team == team:
                return r
        raise KeyError(team)

    @property
    def most_favored(self) -> list[str]:
        best = max(r.total for r in self.rows)
        return [r.team for r in self.rows if r.total == best]

    @property
    def most_favored_fatigue(self) -> list[str]:
        best = max(r.fatigue_subtotal for r in self.rows)
        return [r.team for r in self.rows if r.fatigue_subtotal == best]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["team", *ITEMS, "fatigue_points", "total_points"])
        for r in self.rows:
            w.writerow([r.team, *r.items, r.fatigue_subtotal, r.total])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "teams": [
                {"team": r.team, **dict(zip(ITEMS, r.items)), "fatigue_points": r.fatigue_subtotal,
                 "total_points": r.total}
                for r in self.rows
            ],
            "most_favored": self.most_favored,
            "most_favored_fatigue": self.most_favored_fatigue,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def summary_line(self) -> str:
        return (
            f"most favored overall: {', '.join(self.most_favored)}; "
            f"by fatigue points: {', '.join(self.most_favored_fatigue)}"
        )


TIE_POLICIES = ("high", "low")


def rank_points(
    values: Mapping[str, float], lower_is_better: bool = True, ties: str = "high"
) -> dict[str, int]:
    """Rank-based points: best gets n-1, worst gets 0.

    A team scores n-1 minus the number of teams strictly better than it, so
    tied teams share the higher points of their block. With ``ties="low"``
    they share the lower points instead.
    """
    if ties not in TIE_POLICIES:
        raise ValueError(f"unknown tie policy {ties!r}")
    if len(values) < 2:
        raise ValueError("need at least two teams to rank")
    for k, v in values.items():
        if not math.isfinite(v):
            raise ValueError(f"non-finite value for {k}: {v}")
    n = len(values)
    sign = 1 if lower_is_better else -1
    out = {}
    for k, v in values.items():
        if ties == "high":
            ahead = sum(1 for w in values.values() if sign * w < sign * v)
        else:
            ahead = sum(1 for j, w in values.items() if j != k and sign * w <= sign * v)
        out[k] = n - 1 - ahead
    return out


def travel_points(travel: Mapping[str, int]) -> dict[str, int]:
    """Each team scores the gap between the most travelled team and itself."""
    if not travel:
        raise ValueError("no travel counts")
    top = max(travel.values())
    return {k: abs(v - top) for k, v in travel.items()}


def score(inputs: Mapping[str, TeamInputs], ties: str = "high") -> FairnessScorecard:
    if len(inputs) < 2:
        raise ValueError("need at least two teams")
    rmse = rank_points({k: v.rmse for k, v in inputs.items()}, ties=ties)
    prior = rank_points({k: v.prior_avg_fatigue for k, v in inputs.items()}, ties=ties)
    peak = rank_points({k: v.avg_peak_fatigue for k, v in inputs.items()}, ties=ties)
    trav = travel_points({k: v.travel for k, v in inputs.items()})
    rows = tuple(
        TeamScore(t, (rmse[t], prior[t], peak[t], trav[t], v.rest_days_net, v.home_points))
        for t, v in inputs.items()
    )
    return FairnessScorecard(rows)


def inputs_from_csv(text: str) -> dict[str, TeamInputs]:
    """Read score inputs from CSV with columns team, rmse, prior_avg_fatigue,
    avg_peak_fatigue, travel, rest_days_net, home_points."""
    out = {}
    for rec in csv.DictReader(io.StringIO(text)):
        out[rec["team"]] = TeamInputs(
            rmse=float(rec["rmse"]),
            prior_avg_fatigue=float(rec["prior_avg_fatigue"]),
            avg_peak_fatigue=float(rec["avg_peak_fatigue"]),
            travel=int(rec["travel"]),
            rest_days_net=int(rec["rest_days_net"]),
            home_points=int(rec["home_points"]),
        )
    return out


def inputs_to_csv(inputs: Mapping[str, TeamInputs]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["team", "rmse", "prior_avg_fatigue", "avg_peak_fatigue", "travel", "rest_days_net", "home_points"])
    for t, v in inputs.items():
        w.writerow([t, repr(v.rmse), repr(v.prior_avg_fatigue), repr(v.avg_peak_fatigue), v.travel,
                    v.rest_days_net, v.home_points])
    return buf.getvalue()
