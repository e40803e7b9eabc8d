"""Competitive parameters of a schedule: venue itineraries, travel, home games,
rest days and XinY streaks."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from fractions import Fraction
from typing import Iterable, Sequence

from .schedule import Designation, Schedule, classify_designation

DEFAULT_STREAKS: tuple[tuple[int, int], ...] = ((2, 2), (3, 4), (4, 6), (6, 11))
STREAK_MODES = ("greedy", "all-windows")


@dataclass(frozen=True)
class TeamItinerary:
    team: int
    venue_sequence: tuple[int, ...]
    game_dates: tuple[date, ...]
    cities: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.venue_sequence) != len(self.game_dates):
            raise ValueError("venue and date sequences differ in length")
        if any(a > b for a, b in zip(self.game_dates, self.game_dates[1:])):
            raise ValueError("game dates must be non-decreasing")

    def __len__(self) -> int:
        return len(self.game_dates)


@dataclass(frozen=True)
class CompetitiveSummary:
    team: int
    total_travel: int
    home_games: int
    secondary_home_games: int
    lost_home_games: int
    span_days: int
    no_game_days: int
    avg_games_per_day: Fraction
    streaks: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def rest_days_net(self) -> int:
        """No-game days left after taking out inter-city travel days."""
        return self.no_game_days - self.total_travel

    @property
    def total_streaks(self) -> int:
        return sum(self.streaks.values())


def itinerary(schedule: Schedule, team: int) -> TeamItinerary:
    cfg = schedule.config
    if not 0 <= team < cfg.n:
        raise ValueError(f"unknown team {team}")
    games = schedule.games_of(team)
    return TeamItinerary(
        team,
        tuple(g.venue for g in games),
        tuple(g.start.date() for g in games),
        tuple(cfg.city(g.venue) for g in games),
    )


def travel_count(it: TeamItinerary) -> int:
    """Number of inter-city moves between consecutive games."""
    stops = it.cities or it.venue_sequence
    return sum(1 for a, b in zip(stops, stops[1:]) if a != b)


def home_game_count(schedule: Schedule, team: int) -> tuple[int, int]:
    """(games at the team's primary venue, designated-home games at its secondary venue)."""
    cfg = schedule.config
    own = cfg.primary_home.get(team)
    primary = 0 if own is None else sum(1 for g in schedule.games_of(team) if g.venue == own)
    secondary = sum(
        1
        for g in schedule.games
        if g.home == team and classify_designation(schedule, g) is Designation.S
    )
    return primary, secondary


def lost_home_games(schedule: Schedule, team: int) -> int:
    """Designated-home games that went to the opponent's venue or a neutral one."""
    return sum(
        1
        for g in schedule.games
        if g.home == team and classify_designation(schedule, g) in (Designation.A, Designation.N)
    )


def home_points(schedule: Schedule, team: int) -> int:
    """Primary-venue games, or secondary-home games for teams without a venue."""
    primary, secondary = home_game_count(schedule, team)
    return primary if team in schedule.config.primary_home else secondary


def rest_statistics(it: TeamItinerary) -> tuple[int, int, Fraction]:
    """(span_days, no_game_days, avg_games_per_day) for a non-empty itinerary."""
    if not len(it):
        raise ValueError("empty itinerary")
    span = (it.game_dates[-1] - it.game_dates[0]).days + 1
    no_game = span - len(set(it.game_dates))
    return span, no_game, Fraction(len(it), span)


def streak_count(dates: TeamItinerary | Sequence[date], x: int, y: int, mode: str = "greedy") -> int:
    """Count occurrences of ``x`` or more games inside ``y`` consecutive days.

    Windows of ``y`` days start on every day from the first to the last game
    date. In ``all-windows`` mode every qualifying window counts. In
    ``greedy`` mode windows are taken earliest first and a window only
    counts if it reaches a game past the last game of the previously counted
    window, so a cluster that is a subset of one already counted is skipped.
    """
    if isinstance(dates, TeamItinerary):
        dates = dates.game_dates
    dates = sorted(dates)
    if not 1 <= x <= len(dates) or y < 1:
        raise ValueError(f"bad streak pattern {x}in{y} for {len(dates)} games")
    if mode not in STREAK_MODES:
        raise ValueError(f"unknown streak mode {mode!r}")
    first = dates[0]
    offsets = [(d - first).days for d in dates]
    count = 0
    last_counted = -1
    lo = hi = 0
    for start in range(offsets[-1] + 1):
        while lo < len(offsets) and offsets[lo] < start:
            lo += 1
        while hi < len(offsets) and offsets[hi] < start + y:
            hi += 1
        if hi - lo < x:
            continue
        if mode == "all-windows":
            count += 1
        elif hi - 1 > last_counted:
            count += 1
            last_counted = hi - 1
    return count


def parse_streaks(text: str) -> list[tuple[int, int]]:
    """Parse ``"2in2,3in4"`` into [(2, 2), (3, 4)]."""
    out = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        try:
            x, y = part.lower().split("in")
            out.append((int(x), int(y)))
        except ValueError:
            raise ValueError(f"bad streak pattern {part!r}, expected like 2in2") from None
    return out


def summarize(
    schedule: Schedule,
    patterns: Iterable[tuple[int, int]] = (),
    mode: str = "greedy",
) -> list[CompetitiveSummary]:
    pats = list(DEFAULT_STREAKS) + [p for p in patterns if p not in DEFAULT_STREAKS]
    out = []
    for team in range(schedule.config.n):
        it = itinerary(schedule, team)
        if not len(it):
            raise ValueError(f"team {schedule.config.teams[team].abbrev} has no games")
        span, no_game, avg = rest_statistics(it)
        primary, secondary = home_game_count(schedule, team)
        streaks = {(x, y): streak_count(it, x, y, mode) if x <= len(it) else 0 for x, y in pats}
        out.append(
            CompetitiveSummary(
                team=team,
                total_travel=travel_count(it),
                home_games=primary,
                secondary_home_games=secondary,
                lost_home_games=lost_home_games(schedule, team),
                span_days=span,
                no_game_days=no_game,
                avg_games_per_day=avg,
                streaks=streaks,
            )
        )
    return out
