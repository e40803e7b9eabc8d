"""Violation checkers for the round-robin constraint catalogue.

Checkers never raise on a bad schedule; they return the list of violations
they found. :func:`validate_all` runs a selection and collects a
:class:`ViolationReport`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

import numpy as np

from .schedule import Schedule, home_status


class ConstraintId(str, Enum):
    SRR = "SRR"
    MRR = "MRR"
    VENUE_BALANCE = "VenueBalance"
    ONE_GAME_PER_SLOT = "OneGamePerSlot"
    CONSEC_HOME = "ConsecHome"
    CONSEC_AWAY = "ConsecAway"
    BREAK_SLOT_SECOND = "BreakSlotSecond"
    BREAK_SLOT_LAST = "BreakSlotLast"
    STRONG_TEAM = "StrongTeam"
    COMPLEMENTARY = "Complementary"
    POPULARITY_CAP = "PopularityCap"
    PLAYER_AVAILABILITY = "PlayerAvailability"
    PLACE = "Place"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str) -> "ConstraintId":
        key = text.strip().lower().replace("_", "").replace("-", "")
        for c in cls:
            if c.value.lower() == key or c.name.lower().replace("_", "") == key:
                return c
        raise ValueError(f"unknown constraint {text!r}")


ORDER = {c: k for k, c in enumerate(ConstraintId)}

_HOLDS = {
    "==": lambda m, b: m == b,
    "<=": lambda m, b: m <= b,
    ">=": lambda m, b: m >= b,
    "in": lambda m, b: False,
}


@dataclass(frozen=True)
class Violation:
    """One broken constraint instance.

    ``sense`` is the relation the constraint demands between ``measured``
    and ``bound``; a violation must break it. ``"in"`` is used for
    membership constraints (slot not in a permitted set), where ``bound`` is
    the number of permitted slots.
    """

    constraint_id: ConstraintId
    subjects: tuple[int, ...]
    slots: tuple[int, ...]
    detail: str
    measured: int
    bound: int
    sense: str = "=="

    def __post_init__(self):
        if _HOLDS[self.sense](self.measured, self.bound):
            raise ValueError(
                f"{self.constraint_id}: measured {self.measured} satisfies {self.sense} {self.bound}"
            )

    def sort_key(self):
        return (
            ORDER[self.constraint_id],
            self.slots[0] if self.slots else -1,
            self.subjects[0] if self.subjects else -1,
            self.subjects,
            self.slots,
        )

    def to_dict(self) -> dict:
        return {
            "constraint": str(self.constraint_id),
            "subjects": list(self.subjects),
            "slots": list(self.slots),
            "measured": self.measured,
            "bound": self.bound,
            "sense": self.sense,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class ViolationReport:
    violations: tuple[Violation, ...]
    checked: frozenset[ConstraintId]

    @property
    def passed(self) -> bool:
        return not self.violations

    def by_constraint(self) -> dict[ConstraintId, list[Violation]]:
        out: dict[ConstraintId, list[Violation]] = {c: [] for c in sorted(self.checked, key=ORDER.get)}
        for v in self.violations:
            out[v.constraint_id].append(v)
        return out

    def to_dict(self, team_names: list[str] | None = None) -> dict:
        out = {
            "passed": self.passed,
            "checked": [str(c) for c in sorted(self.checked, key=ORDER.get)],
            "violations": [v.to_dict() for v in self.violations],
        }
        if team_names:
            for v in out["violations"]:
                v["subject_names"] = [team_names[s] for s in v["subjects"]]
        return out

    def to_json(self, team_names: list[str] | None = None) -> str:
        return json.dumps(self.to_dict(team_names), indent=2) + "\n"

    def to_table(self, team_names: list[str] | None = None) -> str:
        name = (lambda t: team_names[t]) if team_names else str
        rows = [("constraint", "teams", "slots", "measured", "bound", "detail")]
        for v in self.violations:
            rows.append(
                (
                    str(v.constraint_id),
                    ",".join(name(s) for s in v.subjects),
                    ",".join(map(str, v.slots)),
                    str(v.measured),
                    f"{v.sense} {v.bound}",
                    v.detail,
                )
            )
        widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]) - 1)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r[:-1], widths)) + "  " + r[-1] for r in rows]
        counts = self.by_constraint()
        lines.append("")
        for c, vs in counts.items():
            lines.append(f"{str(c):<20}{'PASS' if not vs else f'FAIL ({len(vs)})'}")
        lines.append(f"{'overall':<20}{'PASS' if self.passed else 'FAIL'}")
        return "\n".join(line.rstrip() for line in lines) + "\n"


@dataclass(frozen=True)
class IncidenceTensor:
    """``x[i, j, f]`` is True when team i hosts team j in slot f.

    ``at_home[i, f]`` optionally overrides who counts as the home side for
    break-type constraints (venue-based home status rather than the
    designated home team).
    """

    x: np.ndarray
    at_home: np.ndarray | None = field(default=None)
    _sequences: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def slots(self) -> int:
        return self.x.shape[2]

    def plays(self) -> np.ndarray:
        """Games per (team, slot)."""
        return self.x.sum(axis=1) + self.x.sum(axis=0)

    def sequence(self, team: int) -> list[tuple[int, bool, int]]:
        """The team's games as (slot, is_home, opponent) in slot order."""
        if team in self._sequences:
            return list(self._sequences[team])
        keyed = [(int(f), 0, int(j)) for j, f in np.argwhere(self.x[team])]
        keyed += [(int(f), 1, int(j)) for j, f in np.argwhere(self.x[:, team])]
        keyed.sort()
        if self.at_home is None:
            seq = [(f, side == 0, j) for f, side, j in keyed]
        else:
            seq = [(f, bool(self.at_home[team, f]), j) for f, _, j in keyed]
        self._sequences[team] = tuple(seq)
        return seq


def build_incidence(schedule: Schedule, venue_status: bool = True) -> IncidenceTensor:
    n = schedule.config.n
    nslots = len(schedule.config.slot_calendar)
    x = np.zeros((n, n, nslots), dtype=bool)
    at_home = np.zeros((n, nslots), dtype=bool) if venue_status else None
    for g in schedule.games:
        x[g.home, g.away, g.slot] = True
        if at_home is not None:
            at_home[g.home, g.slot] = home_status(schedule, g, g.home)
            at_home[g.away, g.slot] = home_status(schedule, g, g.away)
    return IncidenceTensor(x, at_home)


def _pair_counts(x: np.ndarray) -> np.ndarray:
    hosted = x.sum(axis=2)
    return hosted + hosted.T


def check_single_rr(x: IncidenceTensor) -> list[Violation]:
    return _rr(x, 1, ConstraintId.SRR)


def check_multi_rr(x: IncidenceTensor, r: int) -> list[Violation]:
    if r < 1:
        raise ValueError("rounds must be >= 1")
    return _rr(x, r, ConstraintId.MRR)


def _rr(x: IncidenceTensor, r: int, cid: ConstraintId) -> list[Violation]:
    meets = _pair_counts(x.x)
    out = []
    for i in range(x.n):
        for j in range(i + 1, x.n):
            m = int(meets[i, j])
            if m != r:
                slots = tuple(sorted(np.flatnonzero(x.x[i, j] | x.x[j, i]).tolist()))
                out.append(Violation(cid, (i, j), slots, f"pair meets {m} times, needs {r}", m, r, "=="))
    return out


def check_venue_balance(x: IncidenceTensor, r: int) -> list[Violation]:
    if r < 1:
        raise ValueError("rounds must be >= 1")
    need = r // 2
    hosted = x.x.sum(axis=2)
    out = []
    for i in range(x.n):
        for j in range(x.n):
            if i != j and hosted[i, j] < need:
                out.append(
                    Violation(
                        ConstraintId.VENUE_BALANCE,
                        (i, j),
                        (),
                        f"hosts opponent {int(hosted[i, j])} times, needs at least {need}",
                        int(hosted[i, j]),
                        need,
                        ">=",
                    )
                )
    return out


def check_one_game_per_slot(x: IncidenceTensor, temporally_constrained: bool) -> list[Violation]:
    plays = x.plays()
    out = []
    for i in range(x.n):
        for f in range(x.slots):
            c = int(plays[i, f])
            if c > 1 or (temporally_constrained and c != 1):
                sense = "==" if temporally_constrained else "<="
                out.append(
                    Violation(ConstraintId.ONE_GAME_PER_SLOT, (i,), (f,), f"{c} games in slot", c, 1, sense)
                )
    return out


def _runs(seq: list[tuple[int, bool, int]]) -> list[tuple[bool, list[int]]]:
    runs: list[tuple[bool, list[int]]] = []
    for f, home, _ in seq:
        if runs and runs[-1][0] == home:
            runs[-1][1].append(f)
        else:
            runs.append((home, [f]))
    return runs


def check_consecutive_bounds(x: IncidenceTensor, y: int, z: int) -> list[Violation]:
    """Maximal home (or away) runs in each team's game sequence must have length in [Y, Z]."""
    if y > z:
        raise ValueError("need Y <= Z")
    out = []
    for i in range(x.n):
        for home, slots in _runs(x.sequence(i)):
            cid = ConstraintId.CONSEC_HOME if home else ConstraintId.CONSEC_AWAY
            kind = "home" if home else "away"
            k = len(slots)
            if k > z:
                out.append(Violation(cid, (i,), tuple(slots), f"{k} consecutive {kind} games", k, z, "<="))
            elif k < y:
                out.append(Violation(cid, (i,), tuple(slots), f"{k} consecutive {kind} games", k, y, ">="))
    return out


def check_break_slots(x: IncidenceTensor) -> list[Violation]:
    """No break on a team's second game nor on its last game."""
    out = []
    for i in range(x.n):
        seq = x.sequence(i)
        if len(seq) < 2:
            continue
        for cid, (a, b) in (
            (ConstraintId.BREAK_SLOT_SECOND, (seq[0], seq[1])),
            (ConstraintId.BREAK_SLOT_LAST, (seq[-2], seq[-1])),
        ):
            if a[1] == b[1]:
                kind = "home" if a[1] else "away"
                out.append(Violation(cid, (i,), (a[0], b[0]), f"break: two {kind} games", 2, 1, "<="))
    return out


def check_strong_team(x: IncidenceTensor, strong: Iterable[int]) -> list[Violation]:
    """No team meets strong opponents in two consecutive games."""
    strong = set(strong)
    out = []
    if not strong:
        return out
    for i in range(x.n):
        seq = x.sequence(i)
        for a, b in zip(seq, seq[1:]):
            if a[2] in strong and b[2] in strong:
                out.append(
                    Violation(
                        ConstraintId.STRONG_TEAM,
                        (i, a[2], b[2]),
                        (a[0], b[0]),
                        "two consecutive games against strong teams",
                        2,
                        1,
                        "<=",
                    )
                )
    return out


def check_complementary(schedule: Schedule) -> list[Violation]:
    """Teams sharing a home venue must not both host in the same slot."""
    cfg = schedule.config
    hosts: dict[int, set[int]] = {}
    for g in schedule.games:
        hosts.setdefault(g.slot, set()).add(g.home)
    out = []
    for f in sorted(hosts):
        h = sorted(hosts[f])
        for a_idx, a in enumerate(h):
            for b in h[a_idx + 1 :]:
                if cfg.shares_venue(a, b):
                    out.append(
                        Violation(
                            ConstraintId.COMPLEMENTARY,
                            (a, b),
                            (f,),
                            "venue-sharing teams both host in slot",
                            2,
                            1,
                            "<=",
                        )
                    )
    return out


def _popularity(g: Mapping[tuple[int, int], int], i: int, j: int) -> int:
    if (i, j) in g:
        return g[i, j]
    return g.get((j, i), 0)


def check_popularity_cap(
    schedule: Schedule, g: Mapping[tuple[int, int], int], g_max: int | None
) -> list[Violation]:
    """At most ``g_max`` attractive games per slot.

    A pair missing from ``g`` in one orientation falls back to the reverse
    orientation, then to 0. ``g_max=None`` means uncapped.
    """
    if g_max is None:
        return []
    if g_max < 0:
        raise ValueError("g_max must be >= 0")
    total: dict[int, list] = {}
    for game in schedule.games:
        total.setdefault(game.slot, []).append(game)
    out = []
    for f in sorted(total):
        s = sum(_popularity(g, gm.home, gm.away) for gm in total[f])
        if s > g_max:
            teams = tuple(sorted({t for gm in total[f] for t in (gm.home, gm.away)}))
            out.append(
                Violation(ConstraintId.POPULARITY_CAP, teams, (f,), f"{s} attractive games in slot", s, g_max, "<=")
            )
    return out


def check_player_availability(
    schedule: Schedule, availability: Mapping[tuple[int, int], Iterable[int]]
) -> list[Violation]:
    """Games of a constrained (host, visitor) pair must fall in its permitted slots."""
    out = []
    for g in schedule.games:
        allowed = availability.get((g.home, g.away))
        if allowed is not None and g.slot not in allowed:
            out.append(
                Violation(
                    ConstraintId.PLAYER_AVAILABILITY,
                    (g.home, g.away),
                    (g.slot,),
                    "slot outside player availability",
                    g.slot,
                    len(set(allowed)),
                    "in",
                )
            )
    return out


def check_place(schedule: Schedule, venue_availability: Mapping[int, Iterable[int]]) -> list[Violation]:
    """Home games of a constrained team must fall in its venue-available slots."""
    out = []
    for g in schedule.games:
        allowed = venue_availability.get(g.home)
        if allowed is not None and g.slot not in allowed:
            out.append(
                Violation(
                    ConstraintId.PLACE,
                    (g.home, g.away),
                    (g.slot,),
                    "home game outside venue availability",
                    g.slot,
                    len(set(allowed)),
                    "in",
                )
            )
    return out


def validate_all(
    schedule: Schedule,
    selection: Iterable[ConstraintId | str] | None = None,
    rounds: int | None = None,
) -> ViolationReport:
    """Run the selected checkers (default: all) with parameters from the config."""
    cfg = schedule.config
    sel = set(ConstraintId) if selection is None else {
        c if isinstance(c, ConstraintId) else ConstraintId.parse(c) for c in selection
    }
    if not sel:
        raise ValueError("empty constraint selection")
    r = cfg.rounds if rounds is None else rounds
    x = build_incidence(schedule)
    y, z = cfg.break_bounds
    found: list[Violation] = []
    if ConstraintId.SRR in sel:
        found += check_single_rr(x)
    if ConstraintId.MRR in sel:
        found += check_multi_rr(x, r)
    if ConstraintId.VENUE_BALANCE in sel:
        found += check_venue_balance(x, r)
    if ConstraintId.ONE_GAME_PER_SLOT in sel:
        found += check_one_game_per_slot(x, cfg.temporally_constrained)
    if sel & {ConstraintId.CONSEC_HOME, ConstraintId.CONSEC_AWAY}:
        found += [v for v in check_consecutive_bounds(x, y, z) if v.constraint_id in sel]
    if sel & {ConstraintId.BREAK_SLOT_SECOND, ConstraintId.BREAK_SLOT_LAST}:
        found += [v for v in check_break_slots(x) if v.constraint_id in sel]
    if ConstraintId.STRONG_TEAM in sel:
        found += check_strong_team(x, cfg.strong_set)
    if ConstraintId.COMPLEMENTARY in sel:
        found += check_complementary(schedule)
    if ConstraintId.POPULARITY_CAP in sel:
        found += check_popularity_cap(schedule, cfg.popularity, cfg.popularity_cap)
    if ConstraintId.PLAYER_AVAILABILITY in sel:
        found += check_player_availability(schedule, cfg.availability)
    if ConstraintId.PLACE in sel:
        found += check_place(schedule, cfg.venue_availability)
    found.sort(key=Violation.sort_key)
    return ViolationReport(tuple(found), frozenset(sel))


def merge_reports(*reports: ViolationReport) -> ViolationReport:
    vs = sorted({v for r in reports for v in r.violations}, key=Violation.sort_key)
    return ViolationReport(tuple(vs), frozenset().union(*(r.checked for r in reports)))


def parse_selection(text: str) -> set[ConstraintId]:
    """``"all"`` or a comma list such as ``"mrr,consechome"``."""
    if text.strip().lower() == "all":
        return set(ConstraintId)
    return {ConstraintId.parse(p) for p in text.split(",") if p.strip()}
