"""Hourly fatigue timelines built from play and travel events.

Every event contributes a 30-hour curve: an exponential rise over the 7 hours
of play or travel up to the event's peak, then an exponential decay over 23
hours of rest. A team's timeline is the hour-by-hour sum of all its event
curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, time, timedelta
from typing import Iterable, Sequence

import numpy as np

from .metrics import TeamItinerary, itinerary
from .schedule import Schedule

RISE_HOURS = 7
DECAY_HOURS = 23
CURVE_HOURS = RISE_HOURS + DECAY_HOURS
PEAK_OFFSET = RISE_HOURS - 1
RATE = 5.0
PEAKS = {"play": 1.0, "travel": 0.5}
TRAVEL_TIME = time(10, 0)


@dataclass(frozen=True)
class FatigueCurve:
    kind: str
    peak: float
    samples: np.ndarray

    @property
    def rise(self) -> np.ndarray:
        return self.samples[:RISE_HOURS]

    @property
    def decay(self) -> np.ndarray:
        return self.samples[RISE_HOURS:]


def event_curve(kind: str) -> FatigueCurve:
    """The 30-sample fatigue curve of a single play or travel event.

    Both kinds share the unit shape ``exp(5(x-1))`` then ``exp(-5y)`` on
    evenly spaced x, y in [0, 1]; the amplitude is the kind's peak.
    """
    try:
        peak = PEAKS[kind]
    except KeyError:
        raise ValueError(f"unknown event kind {kind!r}") from None
    x = np.linspace(0.0, 1.0, RISE_HOURS)
    y = np.linspace(0.0, 1.0, DECAY_HOURS)
    unit = np.concatenate([np.exp(RATE * (x - 1.0)), np.exp(-RATE * y)])
    return FatigueCurve(kind, peak, peak * unit)


_CURVES = {k: event_curve(k).samples for k in PEAKS}


@dataclass(frozen=True)
class Event:
    kind: str
    start: datetime


@dataclass(frozen=True)
class FatigueTimeline:
    team: int
    t0: datetime
    samples: np.ndarray
    events: tuple[Event, ...]

    def hour_of(self, when: datetime) -> int:
        return int((when - self.t0) // timedelta(hours=1))

    @property
    def play_hours(self) -> list[int]:
        return [self.hour_of(e.start) for e in self.events if e.kind == "play"]


def _floor_hour(when: datetime) -> datetime:
    return when.replace(minute=0, second=0, microsecond=0)


def superpose(
    events: Sequence[Event], t0: datetime | None = None, hours: int | None = None
) -> tuple[datetime, np.ndarray]:
    """Sum event curves on an hourly grid.

    The grid starts at ``t0`` (default: the earliest event, floored to the
    hour) and runs until 30 hours past the last event unless ``hours`` asks
    for a longer span. Contributions before ``t0`` are dropped.
    """
    if not events:
        raise ValueError("no events to superpose")
    if t0 is None:
        t0 = _floor_hour(min(e.start for e in events))
    offsets = [int((_floor_hour(e.start) - t0) // timedelta(hours=1)) for e in events]
    length = max(offsets) + CURVE_HOURS
    if hours is not None:
        length = max(length, hours)
    out = np.zeros(length)
    for off, e in zip(offsets, events):
        lo = max(off, 0)
        hi = off + CURVE_HOURS
        if hi > 0:
            out[lo:hi] += _CURVES[e.kind][lo - off :]
    return t0, out


def team_events(schedule: Schedule, team: int) -> list[Event]:
    """Play events at each game start plus one travel event per inter-city move.

    Travel happens at 10:00 on the first day after the earlier game, or on
    the morning of the next game when the two games fall on consecutive days.
    """
    games = schedule.games_of(team)
    cfg = schedule.config
    events = [Event("play", g.start) for g in games]
    for prev, nxt in zip(games, games[1:]):
        if cfg.city(prev.venue) == cfg.city(nxt.venue):
            continue
        day = prev.start.date() + timedelta(days=1)
        if day >= nxt.start.date():
            day = nxt.start.date()
        events.append(Event("travel", datetime.combine(day, TRAVEL_TIME)))
    events.sort(key=lambda e: (e.start, e.kind))
    return events


def tournament_window(schedule: Schedule) -> tuple[datetime, int]:
    """Common hourly grid spanning every team's events (midnight of the first day)."""
    all_events = [e for t in range(schedule.config.n) for e in team_events(schedule, t)]
    first = min(e.start for e in all_events)
    last = max(e.start for e in all_events)
    t0 = datetime.combine(first.date(), time(0))
    return t0, int((_floor_hour(last) - t0) // timedelta(hours=1)) + CURVE_HOURS


def build_timeline(
    schedule: Schedule, team: int, window: tuple[datetime, int] | None = None
) -> FatigueTimeline:
    """Fatigue timeline of one team.

    Without ``window`` the grid runs from the team's first event to 30 hours
    past its last; pass :func:`tournament_window` to put all teams on a
    shared grid.
    """
    events = team_events(schedule, team)
    if not events:
        raise ValueError(f"team {team} has no games")
    t0, hours = window if window else (None, None)
    t0, samples = superpose(events, t0, hours)
    return FatigueTimeline(team, t0, samples, tuple(events))


def timeline_from_events(
    events: Iterable[Event], team: int = 0, t0: datetime | None = None, hours: int | None = None
) -> FatigueTimeline:
    events = tuple(sorted(events, key=lambda e: (e.start, e.kind)))
    t0, samples = superpose(events, t0, hours)
    return FatigueTimeline(team, t0, samples, events)


def max_fatigue(tl: FatigueTimeline) -> float:
    return float(tl.samples.max())


def avg_peak_fatigue(tl: FatigueTimeline) -> float:
    """Mean fatigue at the peak hour (start + 6 h) of every play event."""
    hours = [h + PEAK_OFFSET for h in tl.play_hours]
    if not hours:
        raise ValueError("timeline has no play events")
    return float(np.mean(tl.samples[hours]))


def prior_avg_fatigue(tl: FatigueTimeline) -> float:
    """Mean residual fatigue at the start hour of each event.

    The starting event's own first sample is excluded, so an isolated event
    contributes 0.
    """
    vals = []
    for e in tl.events:
        h = tl.hour_of(e.start)
        vals.append(tl.samples[h] - _CURVES[e.kind][0])
    return float(np.mean(vals)) if vals else 0.0


def peak_separation(tl: FatigueTimeline) -> float:
    """Mean gap in hours between consecutive play-event peaks."""
    hours = sorted(tl.play_hours)
    if len(hours) < 2:
        raise ValueError("need at least two play events")
    return float(np.mean(np.diff(hours)))


def fatigue_histogram(tl: FatigueTimeline, bins: int = 10) -> list[tuple[tuple[float, float], int]]:
    if bins < 1:
        raise ValueError("bins must be >= 1")
    top = float(tl.samples.max())
    counts, edges = np.histogram(tl.samples, bins=bins, range=(0.0, top if top > 0 else 1.0))
    return [((float(edges[k]), float(edges[k + 1])), int(c)) for k, c in enumerate(counts)]


def fatigue_cdf(tl: FatigueTimeline) -> list[tuple[float, float]]:
    """Empirical CDF of the hourly samples as (value, fraction <= value) steps."""
    values, counts = np.unique(tl.samples, return_counts=True)
    frac = np.cumsum(counts) / tl.samples.size
    frac[-1] = 1.0
    return list(zip(values.tolist(), frac.tolist()))


@dataclass(frozen=True)
class RestUtilization:
    team: int
    per_game_cumulative: tuple[int, ...]
    ideal: tuple[float, ...]

    @property
    def total(self) -> int:
        return self.per_game_cumulative[-1]


def rest_utilization(it: TeamItinerary) -> RestUtilization:
    """Cumulative no-game days used up before each game, against a straight line.

    The ideal line runs from 0 at the first game to the team's total
    no-game days at the last game.
    """
    dates = sorted(set(it.game_dates))
    if not dates:
        raise ValueError("empty itinerary")
    first = dates[0]
    played = set(dates)
    cum = [
        sum(1 for k in range(1, (d - first).days) if first + timedelta(days=k) not in played)
        for d in it.game_dates
    ]
    g = len(cum)
    total = cum[-1]
    ideal = tuple(total * k / (g - 1) if g > 1 else 0.0 for k in range(g))
    return RestUtilization(it.team, tuple(cum), ideal)


def rest_rmse(u: RestUtilization) -> float:
    a = np.asarray(u.per_game_cumulative, dtype=float)
    b = np.asarray(u.ideal, dtype=float)
    return float(np.sqrt(np.mean((a - b) ** 2)))


def team_rest_utilization(schedule: Schedule, team: int) -> RestUtilization:
    return rest_utilization(itinerary(schedule, team))

