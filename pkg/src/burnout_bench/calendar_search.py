"""Brute-force reconstruction of game dates from published per-team statistics.

Given each team's venue order, the fixture list (who hosts whom where) and
per-team targets for span, games and XinY streak counts, enumerate day
assignments with at most ``max_per_day`` games per calendar day and at most
one game per team per day.

The search runs in two stages. Each team's admissible set of game days is
enumerated first (a bitmask over the horizon); the joint depth-first search
then walks the calendar day by day and only keeps partial calendars whose
per-team prefixes extend to an admissible set.

Run ``python -m burnout_bench.calendar_search`` to regenerate the bundled
PSL-5 fixture.
"""

from __future__ import annotations

import argparse
import itertools
import random
import sys
from dataclasses import dataclass, field
from datetime import date, timedelta
from typing import Iterator, Mapping, Sequence

from .metrics import streak_count
from .schedule import Schedule


@dataclass(frozen=True)
class TeamTargets:
    games: int
    span_days: int
    streaks: Mapping[tuple[int, int], int] = field(default_factory=dict)


def admissible_masks(target: TeamTargets, horizon: int) -> list[int]:
    """All day bitmasks over ``horizon`` days that meet ``target`` exactly.

    Streak counts are tracked incrementally: once day ``d`` is decided, the
    window starting at ``d - y + 1`` is final and can be scored, so partial
    masks that already overshoot a target are cut early.
    """
    out: list[int] = []
    span, games = target.span_days, target.games
    pats = [(x, y, want) for (x, y), want in target.streaks.items()]

    def finish(state, mask, first, last):
        for (x, y, want), (count, prev) in zip(pats, state):
            for start in range(max(first, last - y + 2), last + 1):
                k = bin(mask >> start).count("1")
                if k >= x and games - 1 > prev:
                    count, prev = count + 1, games - 1
            if count != want:
                return False
        return True

    def rec(day, first, last, mask, played, state):
        for play in (True, False):
            if day == last and not play:
                continue
            if day < last and play and played + 1 >= games:
                continue
            if not play and last - day < games - played:
                continue
            m = mask | (1 << day) if play else mask
            p = played + play
            st = state
            for idx, (x, y, want) in enumerate(pats):
                start = day - y + 1
                if start >= first:
                    count, prev = st[idx]
                    k = bin((m >> start) & ((1 << y) - 1)).count("1")
                    if k >= x and p - 1 > prev:
                        if count + 1 > want:
                            break
                        st = st[:idx] + ((count + 1, p - 1),) + st[idx + 1 :]
            else:
                if day == last:
                    if p == games and finish(st, m, first, last):
                        out.append(m)
                else:
                    rec(day + 1, first, last, m, p, st)

    for first in range(horizon - span + 1):
        last = first + span - 1
        if games == 1 or span == 1:
            if games == 1 and span == 1:
                out.append(1 << first)
            continue
        # the first day is a game day; windows of one day are scored here
        st = tuple((1, 0) if y == 1 and x <= 1 else (0, -1) for x, y, _ in pats)
        if all(c <= want for (c, _), (_, _, want) in zip(st, pats)):
            rec(first + 1, first, last, 1 << first, 1, st)
    return out


def search_calendars(
    fixtures: Mapping[tuple[str, str], str],
    sequences: Mapping[str, str],
    targets: Mapping[str, TeamTargets],
    horizon: int,
    max_per_day: int = 2,
    masks: Mapping[str, Sequence[int]] | None = None,
    seed: int | None = None,
) -> Iterator[list[tuple[tuple[str, str], int]]]:
    """Yield calendars as lists of ((home, away), day) in day order.

    ``fixtures`` maps each (host, visitor) pair to a venue code and
    ``sequences`` gives each team's venue codes in game order. ``masks``
    restricts each team to the given admissible day sets (computed from
    ``targets`` when omitted). With ``seed`` the branching order is shuffled,
    which samples different regions of a large solution space first.
    """
    teams = sorted(sequences)
    if masks is None:
        masks = {t: admissible_masks(targets[t], horizon) for t in teams}
    # (day, prefix mask) -> (days played by every completion, days played by some completion)
    prefixes: dict[str, dict[tuple[int, int], tuple[int, int]]] = {}
    full = (1 << horizon) - 1
    for t in teams:
        ok: dict[tuple[int, int], tuple[int, int]] = {}
        for m in masks[t]:
            for d in range(horizon):
                key = (d, m & ((1 << (d + 1)) - 1))
                must, can = ok.get(key, (full, 0))
                ok[key] = (must & m, can | m)
        prefixes[t] = ok
    games = sorted(fixtures)
    total = len(games)
    rng = random.Random(seed) if seed is not None else None

    pos = {t: 0 for t in teams}
    cur = {t: 0 for t in teams}
    played: set[tuple[str, str]] = set()
    assign: list[tuple[tuple[str, str], int]] = []

    def next_venue(t: str) -> str | None:
        s = sequences[t]
        return s[pos[t]] if pos[t] < len(s) else None

    def capacity_ok(day: int, new: Mapping[str, int], done: set) -> bool:
        # forced future game days must fit the daily cap and have a possible opponent
        bounds = {t: prefixes[t][day, new[t]] for t in teams}
        for e in range(day + 1, horizon):
            bit = 1 << e
            forced = [t for t in teams if bounds[t][0] & bit]
            if len(forced) > 2 * max_per_day:
                return False
            for t in forced:
                if not any(
                    bounds[u][1] & bit and ((t, u) not in done and (t, u) in fixtures or (u, t) not in done and (u, t) in fixtures)
                    for u in teams
                    if u != t
                ):
                    return False
        return True

    orderable: dict[frozenset, bool] = {}

    def can_finish(done: frozenset) -> bool:
        # is there any game order, ignoring dates, that completes every venue sequence?
        if len(done) == total:
            return True
        hit = orderable.get(done)
        if hit is None:
            at = {t: 0 for t in teams}
            for h, a in done:
                at[h] += 1
                at[a] += 1
            hit = False
            for g in games:
                if g in done:
                    continue
                v = fixtures[g]
                if all(at[t] < len(sequences[t]) and sequences[t][at[t]] == v for t in g):
                    if can_finish(done | {g}):
                        hit = True
                        break
            orderable[done] = hit
        return hit

    def rec(day: int) -> Iterator[list]:
        if day == horizon:
            if len(assign) == total:
                yield list(assign)
            return
        ready = [
            g for g in games
            if g not in played and next_venue(g[0]) == fixtures[g] and next_venue(g[1]) == fixtures[g]
        ]
        options: list[tuple] = [()]
        for k in range(1, max_per_day + 1):
            options += [c for c in itertools.combinations(ready, k) if len({t for g in c for t in g}) == 2 * k]
        if rng is not None:
            rng.shuffle(options)
        for opt in options:
            playing = {t for g in opt for t in g}
            new = {t: cur[t] | (1 << day) if t in playing else cur[t] for t in teams}
            if not all((day, new[t]) in prefixes[t] for t in teams):
                continue
            if not capacity_ok(day, new, played | set(opt)):
                continue
            saved = dict(cur)
            cur.update(new)
            for g in opt:
                played.add(g)
                assign.append((g, day))
                for t in g:
                    pos[t] += 1
            if can_finish(frozenset(played)):
                yield from rec(day + 1)
            for g in opt:
                played.discard(g)
                assign.pop()
                for t in g:
                    pos[t] -= 1
            cur.update(saved)

    yield from rec(0)


def calendar_targets_met(
    calendar: Sequence[tuple[tuple[str, str], int]],
    fixtures: Mapping[tuple[str, str], str],
    sequences: Mapping[str, str],
    targets: Mapping[str, TeamTargets],
    max_per_day: int = 2,
) -> list[str]:
    """Independent check of a calendar; returns a list of human-readable mismatches."""
    problems = []
    per_day: dict[int, int] = {}
    by_team: dict[str, list[tuple[int, str]]] = {t: [] for t in sequences}
    for (h, a), d in calendar:
        per_day[d] = per_day.get(d, 0) + 1
        by_team[h].append((d, fixtures[h, a]))
        by_team[a].append((d, fixtures[h, a]))
    for d, k in sorted(per_day.items()):
        if k > max_per_day:
            problems.append(f"day {d}: {k} games")
    if sorted(g for g, _ in calendar) != sorted(fixtures):
        problems.append("fixture list differs")
    base = date(2000, 1, 1)
    for t, items in by_team.items():
        items.sort()
        days = [d for d, _ in items]
        if len(set(days)) != len(days):
            problems.append(f"{t}: two games on one day")
        venues = "".join(v for _, v in items)
        if venues != sequences[t]:
            problems.append(f"{t}: venue order {venues} != {sequences[t]}")
        tg = targets[t]
        if len(days) != tg.games:
            problems.append(f"{t}: {len(days)} games != {tg.games}")
            continue
        if days[-1] - days[0] + 1 != tg.span_days:
            problems.append(f"{t}: span {days[-1] - days[0] + 1} != {tg.span_days}")
        dates = [base + timedelta(days=d) for d in days]
        for (x, y), want in tg.streaks.items():
            got = streak_count(dates, x, y)
            if got != want:
                problems.append(f"{t}: {x}in{y} = {got} != {want}")
    return problems


# -- PSL-5 inputs -------------------------------------------------------------

PSL5_SEQUENCES = {
    "IU": "KLLRRRLRRK",
    "KK": "KKMRRLLKKK",
    "LQ": "LLRLLLLLKL",
    "MS": "LLMMMLRLKL",
    "PZ": "KKMRRRRRLK",
    "QG": "KKKRMLRLLK",
}

_P = ((2, 2), (3, 4), (4, 6), (6, 11))
PSL5_TARGETS = {
    t: TeamTargets(10, span, dict(zip(_P, streaks)))
    for t, (span, *streaks) in {
        "IU": (24, 3, 2, 0, 2),
        "KK": (24, 2, 2, 0, 0),
        "LQ": (24, 2, 1, 2, 1),
        "MS": (24, 2, 1, 0, 0),
        "PZ": (22, 2, 2, 1, 2),
        "QG": (25, 1, 1, 0, 0),
    }.items()
}
PSL5_HORIZON = 25
PSL5_START = date(2020, 2, 20)


def psl5_fixtures() -> dict[tuple[str, str], str]:
    """(host, visitor) -> venue code for the 30 PSL-5 league games.

    Venues follow the home-and-away map: H at the host's ground, S at its
    secondary ground, A at the visitor's ground (Lahore when Multan visits,
    since the Multan ground hosted only Multan's own three home games), and
    the single neutral game in Karachi, the only placement that fits the
    published venue orders.
    """
    rows = {
        "IU": {"KK": "R", "LQ": "L", "MS": "R", "PZ": "R", "QG": "R"},
        "KK": {"IU": "K", "LQ": "K", "MS": "L", "PZ": "K", "QG": "K"},
        "LQ": {"IU": "L", "KK": "L", "MS": "L", "PZ": "L", "QG": "L"},
        "MS": {"IU": "L", "KK": "M", "LQ": "L", "PZ": "M", "QG": "M"},
        "PZ": {"IU": "R", "KK": "R", "LQ": "R", "MS": "K", "QG": "R"},
        "QG": {"IU": "K", "KK": "K", "LQ": "L", "MS": "L", "PZ": "K"},
    }
    return {(h, a): v for h, row in rows.items() for a, v in row.items()}


def schedule_calendar(schedule: Schedule, start: date = PSL5_START) -> tuple[list, dict[str, list[int]]]:
    """A loaded schedule as a day-offset calendar plus each team's day mask."""
    cfg = schedule.config
    cal = [
        ((cfg.teams[g.home].abbrev, cfg.teams[g.away].abbrev), (g.start.date() - start).days)
        for g in schedule.games
    ]
    masks = {}
    for t in range(cfg.n):
        masks[cfg.teams[t].abbrev] = [sum(1 << (g.start.date() - start).days for g in schedule.games_of(t))]
    return cal, masks


def calendar_rows(
    calendar: Sequence[tuple[tuple[str, str], int]],
    fixtures: Mapping[tuple[str, str], str],
    start: date = PSL5_START,
    first_slot: Mapping[int, tuple[str, str]] | None = None,
) -> list[dict]:
    """Schedule CSV records for a calendar.

    On double-header days the game listed in ``first_slot`` (or else the one
    whose venue code sorts first) takes slot 0.
    """
    by_day: dict[int, list[tuple[str, str]]] = {}
    for g, d in calendar:
        by_day.setdefault(d, []).append(g)
    rows = []
    for d in sorted(by_day):
        gs = sorted(by_day[d], key=lambda g: (fixtures[g], g))
        if first_slot and d in first_slot and len(gs) > 1:
            gs.sort(key=lambda g: g != first_slot[d])
        for s, (h, a) in enumerate(gs):
            rows.append(
                {
                    "date": (start + timedelta(days=d)).isoformat(),
                    "slot_of_day": s,
                    "home_abbrev": h,
                    "away_abbrev": a,
                    "venue_code": fixtures[h, a],
                }
            )
    return rows


def main(argv: Sequence[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description="enumerate PSL-5 calendars consistent with the published tables")
    ap.add_argument("--limit", type=int, default=1, help="stop after this many calendars")
    ap.add_argument("--seed", type=int, default=None, help="shuffle branching order")
    ap.add_argument("--count-masks", action="store_true", help="only report admissible day sets per team")
    args = ap.parse_args(argv)
    if args.count_masks:
        for t, tg in PSL5_TARGETS.items():
            print(t, len(admissible_masks(tg, PSL5_HORIZON)))
        return 0
    fx = psl5_fixtures()
    for k, cal in enumerate(
        search_calendars(fx, PSL5_SEQUENCES, PSL5_TARGETS, PSL5_HORIZON, seed=args.seed)
    ):
        if k >= args.limit:
            break
        print(f"# calendar {k}")
        for r in calendar_rows(cal, fx):
            print(",".join(str(v) for v in r.values()))
    return 0


if __name__ == "__main__":
    sys.exit(main())
