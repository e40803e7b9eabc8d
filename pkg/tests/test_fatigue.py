import math
from datetime import date, datetime, timedelta

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from burnout_bench.fatigue import (
    Event,
    RestUtilization,
    avg_peak_fatigue,
    build_timeline,
    event_curve,
    fatigue_cdf,
    fatigue_histogram,
    max_fatigue,
    peak_separation,
    prior_avg_fatigue,
    rest_rmse,
    rest_utilization,
    superpose,
    team_events,
    timeline_from_events,
    tournament_window,
)
from burnout_bench.metrics import TeamItinerary
from burnout_bench.schedule import build_schedule, config_from_dict

T0 = datetime(2024, 1, 1, 19)


def decay(k):
    """Unit curve value k hours after the peak hour (k in 0..22)."""
    return math.exp(-5 * k / 22)


def two_city_config():
    return config_from_dict(
        {
            "teams": [{"abbrev": t} for t in "ABC"],
            "venues": [
                {"code": "X1", "city": "x"},
                {"code": "X2", "city": "x"},
                {"code": "Y", "city": "y"},
            ],
            "primary_home": {"A": "X1", "B": "X2", "C": "Y"},
            "slot_calendar": {"start": "2024-01-01", "days": 10},
        }
    )


def schedule_for_a(rows):
    cfg = two_city_config()
    d0 = date(2024, 1, 1)
    return build_schedule(cfg, [(d0 + timedelta(days=d), 0, 0, opp, cfg.venue(v)) for d, opp, v in rows])


class TestCurves:
    @pytest.mark.parametrize("kind, peak", [("play", 1.0), ("travel", 0.5)])
    def test_shape(self, kind, peak):
        c = event_curve(kind)
        assert c.samples.size == 30
        assert c.rise.size == 7 and c.decay.size == 23
        assert c.samples.max() == pytest.approx(peak)
        assert c.rise[0] == pytest.approx(peak * math.exp(-5))
        assert c.decay[22] == pytest.approx(peak * math.exp(-5))
        assert c.rise[3] == pytest.approx(peak * math.exp(-2.5))

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="kind"):
            event_curve("nap")


class TestSuperpose:
    def test_empty(self):
        with pytest.raises(ValueError):
            superpose([])

    def test_minutes_floor_to_hour(self):
        a = superpose([Event("play", T0)], T0)[1]
        b = superpose([Event("play", T0 + timedelta(minutes=45))], T0)[1]
        np.testing.assert_array_equal(a, b)

    def test_events_before_grid_are_clipped(self):
        _, s = superpose([Event("play", T0)], T0 + timedelta(hours=10), 30)
        np.testing.assert_allclose(s[:20], event_curve("play").samples[10:])
        assert not s[20:].any()

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.tuples(st.sampled_from(["play", "travel"]), st.integers(0, 200)), min_size=1, max_size=6))
    def test_total_mass_is_sum_of_curves(self, evs):
        _, s = superpose([Event(k, T0 + timedelta(hours=h)) for k, h in evs], T0, 300)
        want = sum(event_curve(k).samples.sum() for k, _ in evs)
        assert s.sum() == pytest.approx(want)


class TestMetrics:
    def test_isolated_play(self):
        tl = timeline_from_events([Event("play", T0)])
        assert max_fatigue(tl) == pytest.approx(1.0)
        assert avg_peak_fatigue(tl) == pytest.approx(1.0)
        assert prior_avg_fatigue(tl) == 0.0

    def test_two_plays_20_hours_apart(self):
        tl = timeline_from_events([Event("play", T0), Event("play", T0 + timedelta(hours=20))])
        # second start is 14 h past the first peak, second peak 20 h past it
        assert prior_avg_fatigue(tl) == pytest.approx(decay(13) / 2)
        assert avg_peak_fatigue(tl) == pytest.approx((1 + 1 + decay(19)) / 2)
        assert max_fatigue(tl) == pytest.approx(1 + decay(19))
        assert peak_separation(tl) == 20

    def test_separation_needs_two_games(self):
        with pytest.raises(ValueError):
            peak_separation(timeline_from_events([Event("play", T0)]))

    def test_peak_needs_play(self):
        with pytest.raises(ValueError):
            avg_peak_fatigue(timeline_from_events([Event("travel", T0)]))

    def test_histogram_counts_every_sample(self):
        tl = timeline_from_events([Event("play", T0), Event("travel", T0 + timedelta(hours=40))])
        hist = fatigue_histogram(tl, 5)
        assert len(hist) == 5
        assert sum(c for _, c in hist) == tl.samples.size
        assert hist[-1][0][1] == pytest.approx(1.0)
        with pytest.raises(ValueError):
            fatigue_histogram(tl, 0)

    def test_cdf(self):
        tl = timeline_from_events([Event("play", T0)])
        cdf = fatigue_cdf(tl)
        xs, ys = zip(*cdf)
        assert list(xs) == sorted(xs)
        assert all(a < b for a, b in zip(ys, ys[1:]))
        assert ys[-1] == 1.0


class TestTravelPlacement:
    def test_consecutive_days_travel_on_game_day(self):
        evs = team_events(schedule_for_a([(0, 1, "X1"), (1, 2, "Y")]), 0)
        assert [e for e in evs if e.kind == "travel"] == [Event("travel", datetime(2024, 1, 2, 10))]

    def test_rest_day_travel_next_morning(self):
        evs = team_events(schedule_for_a([(0, 1, "X1"), (3, 2, "Y")]), 0)
        assert [e for e in evs if e.kind == "travel"] == [Event("travel", datetime(2024, 1, 2, 10))]

    def test_same_city_no_travel(self):
        evs = team_events(schedule_for_a([(0, 1, "X1"), (2, 2, "X2")]), 0)
        assert [e.kind for e in evs] == ["play", "play"]

    def test_shared_window(self):
        s = schedule_for_a([(0, 1, "X1"), (4, 2, "Y")])
        w = tournament_window(s)
        assert w[0] == datetime(2024, 1, 1)
        lens = {build_timeline(s, t, w).samples.size for t in range(3)}
        assert lens == {w[1]}


class TestRestUtilization:
    def test_even_spacing_is_zero(self):
        it = TeamItinerary(0, (0,) * 5, tuple(date(2024, 1, 1 + 2 * k) for k in range(5)))
        u = rest_utilization(it)
        assert u.per_game_cumulative == (0, 1, 2, 3, 4)
        assert rest_rmse(u) == 0

    def test_front_loaded_rest(self):
        days = (1, 5, 6, 7)  # three idle days before game 2, then none
        it = TeamItinerary(0, (0,) * 4, tuple(date(2024, 1, d) for d in days))
        u = rest_utilization(it)
        assert u.per_game_cumulative == (0, 3, 3, 3)
        assert u.ideal == (0, 1, 2, 3)
        assert rest_rmse(u) == pytest.approx(math.sqrt((0 + 4 + 1 + 0) / 4))

    def test_single_game(self):
        u = rest_utilization(TeamItinerary(0, (0,), (date(2024, 1, 1),)))
        assert rest_rmse(u) == 0

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.floats(0, 50), min_size=1, max_size=10), st.floats(-20, 20))
    def test_constant_offset(self, ideal, c):
        u = RestUtilization(0, tuple(v + c for v in ideal), tuple(ideal))
        assert rest_rmse(u) == pytest.approx(abs(c), abs=1e-9)
