import io

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from powersym.errors import DomainError, GraphFormatError
from powersym.graph import Graph, degree_wrt, edge_list_text, ingest_edge_list, vertex_mask

from .strategies import multigraphs, vertex_subsets


def star(leaves=4, mode="implicit"):
    return Graph(leaves + 1, np.zeros(leaves, int), np.arange(1, leaves + 1), self_loop_mode=mode)


def complete(n, mode="implicit"):
    iu, ju = np.triu_indices(n, k=1)
    return Graph(n, iu, ju, self_loop_mode=mode)


def test_triangle_counts():
    g = ingest_edge_list("1 2\n2 3\n1 3")
    assert (g.n, g.m_raw, g.m_total) == (3, 3, 6)


def test_parallel_edges_kept_unless_dedup():
    g = ingest_edge_list("1 2\n1 2")
    assert g.m_raw == 2
    assert list(g.neighbors(0)) == [1, 1]
    assert ingest_edge_list("1 2\n2 1", dedup=True).m_raw == 1


def test_string_ids_and_degrees():
    g = ingest_edge_list("a b\nb c")
    assert g.labels == ["a", "b", "c"]
    assert g.degree.tolist() == [2, 3, 2]
    assert g.with_mode("none").degree.tolist() == [1, 2, 1]


def test_comments_tabs_and_isolated_vertex():
    g = ingest_edge_list("# header\n% other\n1\t2\n\n3\n")
    assert g.n == 3 and g.m_raw == 1
    assert g.degree.tolist() == [2, 2, 1]


def test_ingest_errors():
    with pytest.raises(DomainError, match="empty graph"):
        ingest_edge_list("# nothing\n")
    with pytest.raises(GraphFormatError, match="line 2"):
        ingest_edge_list("1 2 0\n1 2 x\n", has_timestamps=True)
    with pytest.raises(GraphFormatError, match="negative"):
        ingest_edge_list("1 2 -3\n", has_timestamps=True)
    with pytest.raises(GraphFormatError, match="line 1"):
        ingest_edge_list("4 4\n")


def test_explicit_loops_in_none_mode():
    g = ingest_edge_list("1 1\n1 2\n", self_loop_mode="none")
    assert g.m_loop == 1 and g.m_total == 2
    assert g.degree.tolist() == [2, 1]
    with pytest.raises(ValueError):
        Graph(2, [0], [0], self_loop_mode="implicit")


def test_timestamped_ingest_sorts():
    tel = ingest_edge_list("a b 5\nb c 1\n", has_timestamps=True).normalized()
    assert tel.time.tolist() == [1, 5]
    assert tel.labels == ["a", "b", "c"]


def test_read_from_file(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("x y\ny z\n")
    assert ingest_edge_list(path).n == 3
    with open(path) as fh:
        assert ingest_edge_list(fh).m_raw == 2


def test_degree_wrt_examples():
    s = star()
    assert degree_wrt(s, 0, [1, 2, 3, 4]) == 4
    assert degree_wrt(s, 0, {0}) == 1
    k4 = complete(4)
    assert degree_wrt(k4, 0, [0, 1]) == 2
    with pytest.raises(IndexError):
        degree_wrt(k4, 7, [0])


def test_vertex_mask_inputs():
    g = complete(4)
    assert vertex_mask(g, {3, 1}).tolist() == [False, True, False, True]
    assert vertex_mask(g, np.array([True, False, False, False])).sum() == 1
    with pytest.raises(IndexError):
        vertex_mask(g, [4])


def test_simplified_drops_parallel_and_loops():
    g = Graph(3, [0, 1, 0, 2], [1, 0, 0, 2], self_loop_mode="none")
    s = g.simplified()
    assert s.m_raw == 1 and s.m_loop == 0


@given(multigraphs())
def test_degree_sum(g):
    assert int(g.degree.sum()) == 2 * g.m_nonloop + g.m_loop


@given(multigraphs())
def test_adjacency_symmetric(g):
    counts = np.zeros((g.n, g.n), int)
    for v in range(g.n):
        np.add.at(counts[v], g.neighbors(v), 1)
    assert np.array_equal(counts, counts.T)


@given(multigraphs())
def test_implicit_adds_one_loop_per_vertex(g):
    s = g.simplified()
    assert s.with_mode("implicit").m_total == s.with_mode("none").m_total + g.n


@given(multigraphs(), st.data())
def test_degree_split_over_partition(g, data):
    A = data.draw(vertex_subsets(g.n))
    mask = vertex_mask(g, A)
    inside = (mask[g.src] & mask[g.dst]).sum()
    cross = (mask[g.src] ^ mask[g.dst]).sum()
    assert int(g.degree[mask].sum()) == 2 * inside + int(g.loop_counts[mask].sum()) + cross


@given(multigraphs())
def test_round_trip(g):
    text = edge_list_text(g)
    back = ingest_edge_list(io.StringIO(text), self_loop_mode=g.self_loop_mode)
    # relabel through the retained label map
    index = [int(lbl) for lbl in back.labels]
    assert back.n == g.n and back.m_total == g.m_total
    ours = sorted(map(tuple, np.sort(g.raw_edges(), axis=1).tolist()))
    theirs = sorted(
        tuple(sorted((index[a], index[b]))) for a, b in back.raw_edges().tolist()
    )
    assert ours == theirs
