import random

import pytest

import oracle
from burnout_bench.constraints import (
    ConstraintId,
    Violation,
    ViolationReport,
    merge_reports,
    parse_selection,
    validate_all,
)

# first canonical single round-robin: A-B C-D | A-C B-D | A-D B-C, hosts listed first
BASE = oracle.canonical_games(1)[0]


def run(games, rounds=1, sel=None):
    cfg = oracle.small_config(rounds)
    return validate_all(oracle.to_schedule(cfg, games), sel, rounds=rounds).by_constraint()


def counts(games, rounds=1):
    return {c: len(v) for c, v in run(games, rounds).items()}


class TestHandExamples:
    def test_base_schedule(self):
        assert BASE == [(0, 1, 0, 0), (2, 3, 2, 0), (0, 2, 0, 1), (1, 3, 1, 1), (0, 3, 0, 2), (1, 2, 1, 2)]
        got = counts(BASE)
        # slot 0 holds A-B and C-D, popularity 2 against a cap of 1
        assert got[ConstraintId.POPULARITY_CAP] == 1
        # C meets D, A, B and D meets C, B, A: one strong back-to-back each
        assert got[ConstraintId.STRONG_TEAM] == 2
        for c in (ConstraintId.SRR, ConstraintId.ONE_GAME_PER_SLOT, ConstraintId.COMPLEMENTARY,
                  ConstraintId.PLAYER_AVAILABILITY, ConstraintId.PLACE):
            assert got[c] == 0, c

    def test_missing_game(self):
        v = run(BASE[1:])[ConstraintId.SRR]
        assert [(x.subjects, x.measured, x.bound) for x in v] == [((0, 1), 0, 1)]
        idle = run(BASE[1:])[ConstraintId.ONE_GAME_PER_SLOT]
        assert sorted(x.subjects for x in idle) == [(0,), (1,)]

    def test_availability_window(self):
        # swap the first and last rounds so A-B lands in slot 2
        games = [(h, a, v, 2 - s if s != 1 else s) for h, a, v, s in BASE]
        v = run(games)[ConstraintId.PLAYER_AVAILABILITY]
        assert [(x.subjects, x.slots, x.sense) for x in v] == [((0, 1), (2,), "in")]

    def test_place(self):
        # C may host only in slots 0, 2, 4, 5
        games = [(2, 0, 2, 1) if g[:2] == (0, 2) else g for g in BASE]
        v = run(games)[ConstraintId.PLACE]
        assert [(x.subjects, x.slots) for x in v] == [((2, 0), (1,))]

    def test_complementary_shared_ground(self):
        # D borrows C's ground while C also hosts in the same slot
        games = [(0, 1, 0, 0), (2, 3, 2, 0), (3, 0, 2, 1), (2, 1, 2, 1)]
        v = run(games)[ConstraintId.COMPLEMENTARY]
        assert [(x.subjects, x.slots) for x in v] == [((2, 3), (1,))]

    def test_mrr_counts_per_pair(self):
        games = oracle.canonical_games(2)[0]
        assert counts(games, 2)[ConstraintId.MRR] == 0
        assert counts(games[:-1], 2)[ConstraintId.MRR] == 1


class TestSelection:
    @pytest.mark.parametrize(
        "text, want",
        [
            ("all", set(ConstraintId)),
            ("mrr", {ConstraintId.MRR}),
            ("MRR, consec-home ,place", {ConstraintId.MRR, ConstraintId.CONSEC_HOME, ConstraintId.PLACE}),
            ("one_game_per_slot", {ConstraintId.ONE_GAME_PER_SLOT}),
        ],
    )
    def test_parse(self, text, want):
        assert parse_selection(text) == want

    def test_unknown(self):
        with pytest.raises(ValueError, match="unknown constraint"):
            parse_selection("mrr,nosuch")

    def test_empty(self):
        with pytest.raises(ValueError):
            validate_all(oracle.to_schedule(oracle.small_config(1), BASE), [])

    def test_only_selected_are_reported(self):
        cfg = oracle.small_config(1)
        rep = validate_all(oracle.to_schedule(cfg, BASE), ["PopularityCap"])
        assert rep.checked == {ConstraintId.POPULARITY_CAP}
        assert {v.constraint_id for v in rep.violations} == {ConstraintId.POPULARITY_CAP}


class TestViolation:
    def test_cannot_record_satisfied_relation(self):
        with pytest.raises(ValueError):
            Violation(ConstraintId.MRR, (0, 1), (), "fine", 2, 2)
        with pytest.raises(ValueError):
            Violation(ConstraintId.POPULARITY_CAP, (), (0,), "fine", 1, 1, "<=")

    @pytest.mark.parametrize("k", range(20))
    def test_every_reported_violation_breaks_its_relation(self, k):
        cfg = oracle.small_config(2)
        games = oracle.corrupt(oracle.canonical_games(2)[k * 19], cfg, random.Random(k))
        rep = validate_all(oracle.to_schedule(cfg, games))
        for v in rep.violations:
            assert v.sense in ("==", "<=", ">=", "in")
            assert v.subjects or v.slots


class TestReport:
    def test_deterministic_and_sorted(self, psl5):
        a, b = validate_all(psl5), validate_all(psl5)
        assert a == b
        assert a.to_json() == b.to_json()
        keys = [v.sort_key() for v in a.violations]
        assert keys == sorted(keys)

    def test_psl5_is_a_double_round_robin(self, psl5):
        rep = validate_all(psl5, ["MRR", "OneGamePerSlot", "VenueBalance"], rounds=2)
        assert rep.passed
        assert "overall" in rep.to_table() and "PASS" in rep.to_table()

    def test_psl5_is_not_a_single_round_robin(self, psl5):
        v = validate_all(psl5, ["SRR"]).violations
        assert len(v) == 15 and all(x.measured == 2 for x in v)

    def test_merge(self, psl5):
        a = validate_all(psl5, ["SRR"])
        b = validate_all(psl5, ["MRR"], rounds=3)
        m = merge_reports(a, b)
        assert m.checked == {ConstraintId.SRR, ConstraintId.MRR}
        assert len(m.violations) == len(a.violations) + len(b.violations)
        assert merge_reports(a, a) == a

    def test_team_names_in_json(self, psl5):
        names = [t.abbrev for t in psl5.config.teams]
        d = validate_all(psl5, ["SRR"]).to_dict(names)
        for v in d["violations"]:
            assert v["subject_names"] == [names[t] for t in v["subjects"]]


@pytest.mark.parametrize("rounds", [1, 2])
def test_agrees_with_brute_force_on_a_sample(rounds):
    cfg = oracle.small_config(rounds)
    rng = random.Random(rounds)
    pool = oracle.canonical_games(rounds)
    for games in rng.sample(pool, 10):
        for g in (games, oracle.corrupt(games, cfg, rng), oracle.corrupt(games, cfg, rng)):
            by = validate_all(oracle.to_schedule(cfg, g), rounds=rounds).by_constraint()
            assert {c: len(v) for c, v in by.items()} == {c: oracle.reference(c, cfg, g, rounds) for c in ConstraintId}


def test_uncapped_popularity_reports_nothing():
    cfg = oracle.small_config(1)
    from dataclasses import replace

    rep = validate_all(oracle.to_schedule(replace(cfg, popularity_cap=None), BASE), ["PopularityCap"])
    assert rep.passed and isinstance(rep, ViolationReport)
