import math

import numpy as np
import pytest

from powersym.errors import DomainError
from powersym.generators import ElitisticParams, generate_elitistic, generate_elitistic_growth
from powersym.graph import TimestampedEdgeList, ingest_edge_list
from powersym.temporal import (
    FRAME_COINCIDES,
    FRAME_TOO_SMALL,
    build_frames,
    elite_fraction_series,
    snapshot,
    vertex_births,
)


def growing_star(leaves=20):
    t = np.arange(1, leaves + 1)
    return TimestampedEdgeList(np.zeros(leaves, int), t, t)


def test_growing_star_frames():
    edges = growing_star()
    series = build_frames(edges, 20)
    assert series.frame_count == 20
    for f in series.frames:
        target = math.ceil(f.t_index * 21 / 20)
        assert f.target_n == target
        assert f.n == target and f.cutoff_time == target - 1
        assert f.edge_count == target - 1


def test_single_frame_is_whole_graph():
    edges = growing_star(7)
    series = elite_fraction_series(build_frames(edges, 1))
    (frame,) = series.frames
    assert frame.n == 8 and frame.edge_count == 7
    # centre plus two leaves: 2 edges + 3 loops inside, 5 loops outside
    assert frame.k_sp == 3 and frame.m == 15


def test_same_timestamp_frames_identical_and_flagged():
    g, _ = generate_elitistic(ElitisticParams(1))
    edges = TimestampedEdgeList(g.src, g.dst, np.zeros(g.m_raw, int))
    series = elite_fraction_series(build_frames(edges, 5))
    assert len({(f.n, f.edge_count) for f in series.frames}) == 1
    assert all(FRAME_COINCIDES in f.flags for f in series.frames[1:])
    r = series.column("r")
    assert np.all(r == r[0]) and r[0] == pytest.approx(3 / 9)


def test_growth_r_decreases():
    series = elite_fraction_series(build_frames(generate_elitistic_growth(1500), 10))
    r = series.column("r")
    assert np.all(np.diff(r) <= 0) and r[-1] < r[0]


def test_tiny_first_frame_is_skipped():
    edges = TimestampedEdgeList([0, 2, 4], [1, 3, 5], [0, 1, 2])
    series = elite_fraction_series(build_frames(edges, 20))
    assert series.frames[0].n == 2
    tel = TimestampedEdgeList([0], [1], [0], labels=["a", "b", "c"])
    assert vertex_births(tel).tolist() == [0, 0, -1]
    s2 = elite_fraction_series(build_frames(TimestampedEdgeList([0, 0], [1, 2], [0, 5]), 3))
    assert all(FRAME_TOO_SMALL not in f.flags for f in s2.frames)


def test_snapshot_modes():
    edges = ingest_edge_list("a b 1\nb c 2\nc c 3\n", has_timestamps=True, self_loop_mode="none")
    g = snapshot(edges.normalized(), 3, self_loop_mode="none")
    assert g.m_total == 3 and g.m_loop == 1
    g2 = snapshot(edges.normalized(), 2)
    assert g2.n == 3 and g2.m_total == 5


def test_thread_count_does_not_change_results():
    frames = build_frames(generate_elitistic_growth(800), 8)
    a = elite_fraction_series(frames, threads=1)
    b = elite_fraction_series(frames, threads=4)
    assert [f.k_sp for f in a.frames] == [f.k_sp for f in b.frames]
    # input frames are left untouched
    assert all(f.k_sp is None for f in frames.frames)


def test_core_method():
    series = elite_fraction_series(build_frames(generate_elitistic_growth(600), 5), method="core")
    assert all(f.k_sp is not None and 0 < f.r <= 1 for f in series.frames)


def test_errors():
    with pytest.raises(DomainError):
        build_frames(growing_star(), 0)
    with pytest.raises(DomainError):
        build_frames(TimestampedEdgeList([], [], []), 5)
