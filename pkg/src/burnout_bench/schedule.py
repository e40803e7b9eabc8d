"""Tournament and schedule domain types, file ingestion and venue designations.

A schedule file lists games as ``date, slot_of_day, home_abbrev, away_abbrev,
venue_code``; the tournament config (teams, venues, home-venue ownership and
constraint parameters) lives in a separate JSON file.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import date, datetime, time, timedelta
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

CSV_COLUMNS = ("date", "slot_of_day", "home_abbrev", "away_abbrev", "venue_code")


class ScheduleError(ValueError):
    """Raised for any invalid config or schedule input."""


class ScheduleParseError(ScheduleError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if field is not None:
            loc.append(f"field {field!r}")
        super().__init__(f"{', '.join(loc)}: {message}" if loc else message)
        self.line = line
        self.field = field


class UnknownCodeError(ScheduleParseError):
    pass


class DuplicateSlotError(ScheduleError):
    pass


@dataclass(frozen=True)
class Team:
    id: int
    name: str
    abbrev: str


@dataclass(frozen=True)
class Venue:
    id: int
    name: str
    city: str
    code: str


class Designation(str, Enum):
    """Where a designated-home game was actually played."""

    H = "H"  # own primary home
    A = "A"  # opponent's home
    S = "S"  # own secondary home
    N = "N"  # neutral venue

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TournamentConfig:
    teams: tuple[Team, ...]
    venues: tuple[Venue, ...]
    rounds: int = 1
    primary_home: Mapping[int, int] = field(default_factory=dict)
    secondary_home: Mapping[int, int] = field(default_factory=dict)
    slot_calendar: tuple[tuple[date, int], ...] = ()
    temporally_constrained: bool = False
    break_bounds: tuple[int, int] = (1, 2)
    strong_set: frozenset[int] = frozenset()
    availability: Mapping[tuple[int, int], frozenset[int]] = field(default_factory=dict)
    venue_availability: Mapping[int, frozenset[int]] = field(default_factory=dict)
    popularity: Mapping[tuple[int, int], int] = field(default_factory=dict)
    popularity_cap: int | None = None
    name: str = ""
    single_start: time = time(19, 0)
    double_starts: tuple[time, time] = (time(14, 0), time(19, 0))

    def __post_init__(self):
        n = len(self.teams)
        if n < 2:
            raise ScheduleError(f"need at least 2 teams, got {n}")
        if [t.id for t in self.teams] != list(range(n)):
            raise ScheduleError("team ids must be dense 0..n-1 in order")
        if len({t.abbrev for t in self.teams}) != n:
            raise ScheduleError("team abbreviations must be unique")
        if [v.id for v in self.venues] != list(range(len(self.venues))):
            raise ScheduleError("venue ids must be dense 0..m-1 in order")
        if len({v.code for v in self.venues}) != len(self.venues):
            raise ScheduleError("venue codes must be unique")
        if self.rounds < 1:
            raise ScheduleError("rounds must be >= 1")
        y, z = self.break_bounds
        if y > z:
            raise ScheduleError(f"break bounds need Y <= Z, got {y} > {z}")
        if not self.strong_set <= set(range(n)):
            raise ScheduleError("strong set contains unknown teams")
        for t in range(n):
            if t not in self.primary_home and t not in self.secondary_home:
                raise ScheduleError(
                    f"team {self.teams[t].abbrev} has neither a primary nor a secondary home"
                )
        for mapping in (self.primary_home, self.secondary_home):
            for t, v in mapping.items():
                if not 0 <= t < n or not 0 <= v < len(self.venues):
                    raise ScheduleError(f"bad home-venue entry {t} -> {v}")
        per_date: dict[date, set[int]] = {}
        for d, s in self.slot_calendar:
            if s not in (0, 1):
                raise ScheduleError(f"slot-of-day must be 0 or 1, got {s}")
            if s in per_date.setdefault(d, set()):
                raise ScheduleError(f"slot ({d}, {s}) listed twice")
            per_date[d].add(s)

    @property
    def n(self) -> int:
        return len(self.teams)

    def team(self, abbrev: str) -> int:
        for t in self.teams:
            if t.abbrev == abbrev:
                return t.id
        raise UnknownCodeError(f"unknown team {abbrev!r}")

    def venue(self, code: str) -> int:
        for v in self.venues:
            if v.code == code:
                return v.id
        raise UnknownCodeError(f"unknown venue {code!r}")

    def city(self, venue: int) -> str:
        return self.venues[venue].city

    def slot_index(self, day: date, slot_of_day: int) -> int:
        try:
            return self.slot_calendar.index((day, slot_of_day))
        except ValueError:
            raise ScheduleError(f"slot ({day}, {slot_of_day}) not in slot calendar") from None

    def home_venues(self, team: int) -> set[int]:
        return {m[team] for m in (self.primary_home, self.secondary_home) if team in m}

    def shares_venue(self, a: int, b: int) -> bool:
        return a != b and bool(self.home_venues(a) & self.home_venues(b))


@dataclass(frozen=True)
class Game:
    home: int
    away: int
    venue: int
    slot: int
    start: datetime

    def __post_init__(self):
        if self.home == self.away:
            raise ScheduleError(f"team {self.home} cannot play itself")

    def involves(self, team: int) -> bool:
        return team == self.home or team == self.away

    def opponent(self, team: int) -> int:
        return self.away if team == self.home else self.home


@dataclass(frozen=True)
class Schedule:
    config: TournamentConfig
    games: tuple[Game, ...]

    def __post_init__(self):
        nslots = len(self.config.slot_calendar)
        seen: dict[tuple[int, int], Game] = {}
        for g in self.games:
            if not 0 <= g.slot < nslots:
                raise ScheduleError(f"slot {g.slot} outside calendar of {nslots} slots")
            for t in (g.home, g.away):
                if not 0 <= t < self.config.n:
                    raise ScheduleError(f"unknown team id {t}")
                if (t, g.slot) in seen:
                    raise DuplicateSlotError(
                        f"team {self.config.teams[t].abbrev} plays twice in slot {g.slot}"
                    )
                seen[t, g.slot] = g

    def games_of(self, team: int) -> list[Game]:
        """The team's games in chronological order."""
        return [g for g in self.games if g.involves(team)]


def build_schedule(config: TournamentConfig, rows: Iterable[tuple]) -> Schedule:
    """Build a schedule from ``(date, slot_of_day, home, away, venue)`` tuples of ids.

    Start times are filled in from the config: a lone game on a date starts at
    ``single_start``; on a double-header date the two slots use ``double_starts``.
    """
    rows = list(rows)
    per_date: dict[date, int] = {}
    for d, *_ in rows:
        per_date[d] = per_date.get(d, 0) + 1
    games = []
    for d, s, h, a, v in rows:
        t = config.double_starts[s] if per_date[d] > 1 else config.single_start
        games.append(Game(h, a, v, config.slot_index(d, s), datetime.combine(d, t)))
    games.sort(key=lambda g: (*config.slot_calendar[g.slot], config.venues[g.venue].code))
    return Schedule(config, tuple(games))


# -- config I/O ---------------------------------------------------------------


def _parse_time(text: str) -> time:
    return time.fromisoformat(text)


def _slot_calendar(raw) -> tuple[tuple[date, int], ...]:
    if isinstance(raw, dict):
        start = date.fromisoformat(raw["start"])
        days = raw.get("days")
        if days is None:
            days = (date.fromisoformat(raw["end"]) - start).days + 1
        per_day = raw.get("slots_per_day", 2)
        return tuple((start + timedelta(d), s) for d in range(days) for s in range(per_day))
    return tuple((date.fromisoformat(d), int(s)) for d, s in raw)


def config_from_dict(data: Mapping) -> TournamentConfig:
    teams = tuple(
        Team(i, t.get("name", t["abbrev"]), t["abbrev"]) for i, t in enumerate(data["teams"])
    )
    venues = tuple(
        Venue(i, v.get("name", v["code"]), v.get("city", v["code"]), v["code"])
        for i, v in enumerate(data["venues"])
    )
    tix = {t.abbrev: t.id for t in teams}
    vix = {v.code: v.id for v in venues}

    def team(a):
        try:
            return tix[a]
        except KeyError:
            raise UnknownCodeError(f"unknown team {a!r} in config") from None

    def venue(c):
        try:
            return vix[c]
        except KeyError:
            raise UnknownCodeError(f"unknown venue {c!r} in config") from None

    def pair(key: str) -> tuple[int, int]:
        a, b = key.split("-")
        return team(a), team(b)

    starts = data.get("start_times", {})
    cap = data.get("popularity_cap")
    return TournamentConfig(
        teams=teams,
        venues=venues,
        rounds=int(data.get("rounds", 1)),
        primary_home={team(t): venue(v) for t, v in data.get("primary_home", {}).items()},
        secondary_home={team(t): venue(v) for t, v in data.get("secondary_home", {}).items()},
        slot_calendar=_slot_calendar(data.get("slot_calendar", [])),
        temporally_constrained=bool(data.get("temporally_constrained", False)),
        break_bounds=tuple(data.get("break_bounds", (1, 2))),
        strong_set=frozenset(team(t) for t in data.get("strong_set", [])),
        availability={pair(k): frozenset(v) for k, v in data.get("availability", {}).items()},
        venue_availability={
            team(k): frozenset(v) for k, v in data.get("venue_availability", {}).items()
        },
        popularity={pair(k): int(v) for k, v in data.get("popularity", {}).items()},
        popularity_cap=None if cap is None else int(cap),
        name=data.get("name", ""),
        single_start=_parse_time(starts.get("single", "19:00")),
        double_starts=tuple(_parse_time(s) for s in starts.get("double", ["14:00", "19:00"])),
    )


def config_to_dict(config: TournamentConfig) -> dict:
    ab = [t.abbrev for t in config.teams]
    code = [v.code for v in config.venues]
    out = {
        "name": config.name,
        "teams": [{"abbrev": t.abbrev, "name": t.name} for t in config.teams],
        "venues": [{"code": v.code, "name": v.name, "city": v.city} for v in config.venues],
        "rounds": config.rounds,
        "primary_home": {ab[t]: code[v] for t, v in sorted(config.primary_home.items())},
        "secondary_home": {ab[t]: code[v] for t, v in sorted(config.secondary_home.items())},
        "slot_calendar": [[d.isoformat(), s] for d, s in config.slot_calendar],
        "temporally_constrained": config.temporally_constrained,
        "break_bounds": list(config.break_bounds),
        "strong_set": [ab[t] for t in sorted(config.strong_set)],
        "availability": {
            f"{ab[i]}-{ab[j]}": sorted(s) for (i, j), s in sorted(config.availability.items())
        },
        "venue_availability": {ab[t]: sorted(s) for t, s in sorted(config.venue_availability.items())},
        "popularity": {f"{ab[i]}-{ab[j]}": g for (i, j), g in sorted(config.popularity.items())},
        "popularity_cap": config.popularity_cap,
        "start_times": {
            "single": config.single_start.strftime("%H:%M"),
            "double": [t.strftime("%H:%M") for t in config.double_starts],
        },
    }
    return out


def load_config(path: str | Path) -> TournamentConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ScheduleParseError(e.msg, line=e.lineno) from e
    return config_from_dict(data)


def bundled_path(name: str) -> Path:
    """Path of a data file shipped with the package (e.g. ``psl5.csv``)."""
    return Path(str(resources.files("burnout_bench") / "data" / name))


# -- schedule I/O -------------------------------------------------------------


def _resolve_config(ref: str, near: Path) -> TournamentConfig:
    for cand in (near / f"{ref}.json", near / f"{ref}_config.json", bundled_path(f"{ref}_config.json")):
        if cand.is_file():
            return load_config(cand)
    raise ScheduleError(f"cannot resolve config reference {ref!r}")


def _row_ids(config: TournamentConfig, rec: Mapping, line: int | None) -> tuple:
    def get(key):
        val = rec.get(key)
        if val is None or str(val).strip() == "":
            raise ScheduleParseError("missing value", line=line, field=key)
        return str(val).strip()

    try:
        d = date.fromisoformat(get("date"))
    except ValueError:
        raise ScheduleParseError(f"bad ISO date {rec.get('date')!r}", line=line, field="date") from None
    try:
        s = int(get("slot_of_day"))
    except ValueError:
        raise ScheduleParseError("slot_of_day must be an integer", line=line, field="slot_of_day") from None
    ids = []
    for key, lookup in (("home_abbrev", config.team), ("away_abbrev", config.team), ("venue_code", config.venue)):
        try:
            ids.append(lookup(get(key)))
        except UnknownCodeError as e:
            raise UnknownCodeError(str(e), line=line, field=key) from None
    try:
        config.slot_index(d, s)
    except ScheduleError as e:
        raise ScheduleParseError(str(e), line=line, field="date") from None
    return (d, s, *ids)


def parse_csv(text: str, config: TournamentConfig) -> Schedule:
    reader = csv.DictReader(io.StringIO(text))
    missing = [c for c in CSV_COLUMNS if c not in (reader.fieldnames or [])]
    if missing:
        raise ScheduleParseError(f"missing columns {missing}", line=1)
    rows = [_row_ids(config, rec, reader.line_num) for rec in reader]
    return build_schedule(config, rows)


def load_schedule(
    path: str | Path, config: TournamentConfig | str | Path | None = None, format: str | None = None
) -> Schedule:
    """Read a schedule file.

    ``config`` may be a loaded config or a path to one. JSON schedules may
    instead name their config (``"config": "psl5"``), resolved next to the
    schedule file first and then among the bundled data files.
    """
    path = Path(path)
    fmt = format or path.suffix.lstrip(".").lower()
    if isinstance(config, (str, Path)):
        config = load_config(config)
    text = path.read_text(encoding="utf-8")
    if fmt == "csv":
        if config is None:
            raise ScheduleError("CSV schedules need an explicit config")
        return parse_csv(text, config)
    if fmt != "json":
        raise ScheduleError(f"unsupported schedule format {fmt!r}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScheduleParseError(e.msg, line=e.lineno) from e
    if config is None:
        ref = data.get("config")
        if isinstance(ref, dict):
            config = config_from_dict(ref)
        elif isinstance(ref, str):
            config = _resolve_config(ref, path.parent)
        else:
            raise ScheduleError("JSON schedule has no config reference")
    rows = [_row_ids(config, rec, None) for rec in data.get("games", [])]
    return build_schedule(config, rows)


def _game_records(schedule: Schedule) -> list[dict]:
    cfg = schedule.config
    out = []
    for g in schedule.games:
        d, s = cfg.slot_calendar[g.slot]
        out.append(
            {
                "date": d.isoformat(),
                "slot_of_day": s,
                "home_abbrev": cfg.teams[g.home].abbrev,
                "away_abbrev": cfg.teams[g.away].abbrev,
                "venue_code": cfg.venues[g.venue].code,
            }
        )
    return out


def dumps_schedule(schedule: Schedule, format: str = "csv") -> str:
    records = _game_records(schedule)
    if format == "json":
        return json.dumps({"config": schedule.config.name, "games": records}, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(records)
    return buf.getvalue()


def save_schedule(schedule: Schedule, path: str | Path, format: str | None = None) -> None:
    path = Path(path)
    Path(path).write_text(
        dumps_schedule(schedule, format or path.suffix.lstrip(".").lower()), encoding="utf-8"
    )


def load_psl5() -> Schedule:
    """The bundled PSL-5 league-stage fixture with its config."""
    return load_schedule(bundled_path("psl5.csv"), bundled_path("psl5_config.json"))


# -- designations -------------------------------------------------------------


def designate(config: TournamentConfig, home: int, away: int, venue: int) -> Designation:
    """Classify a designated-home game by the venue it was played at.

    Precedence: the opponent's primary venue makes it an away game even if the
    venue is also our secondary home; our own primary venue makes it a home
    game; a venue the opponent uses as secondary home is still away; our own
    secondary venue is S; anything else is neutral.
    """
    if config.primary_home.get(away) == venue:
        return Designation.A
    if config.primary_home.get(home) == venue:
        return Designation.H
    if config.secondary_home.get(away) == venue:
        return Designation.A
    if config.secondary_home.get(home) == venue:
        return Designation.S
    return Designation.N


def classify_designation(schedule: Schedule, game: Game) -> Designation:
    return designate(schedule.config, game.home, game.away, game.venue)


def home_status(schedule: Schedule, game: Game, team: int) -> bool:
    """True when ``team`` is effectively at home in ``game``.

    The designated-home side is home for H and S; its opponent is home only
    when the game went to the opponent's venue (A). Neutral games are away
    for both sides.
    """
    d = classify_designation(schedule, game)
    if team == game.home:
        return d in (Designation.H, Designation.S)
    return d is Designation.A


def home_away_map(schedule: Schedule) -> list[list[Designation | None]]:
    """Matrix of designations indexed (designated-home team, opponent).

    The diagonal and pairs with no designated-home game are None. With more
    than one designated-home game per ordered pair the earliest one is used.
    """
    n = schedule.config.n
    out: list[list[Designation | None]] = [[None] * n for _ in range(n)]
    for g in schedule.games:
        if out[g.home][g.away] is None:
            out[g.home][g.away] = classify_designation(schedule, g)
    return out


def format_home_away_map(schedule: Schedule) -> str:
    ab = [t.abbrev for t in schedule.config.teams]
    m = home_away_map(schedule)
    lines = ["\t" + "\t".join(ab)]
    for i, row in enumerate(m):
        cells = ["-" if i == j else (str(c) if c else ".") for j, c in enumerate(row)]
        lines.append(ab[i] + "\t" + "\t".join(cells))
    return "\n".join(lines) + "\n"


def team_ids(config: TournamentConfig, abbrevs: Sequence[str]) -> list[int]:
    return [config.team(a) for a in abbrevs]
