import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from powersym.axioms import (
    AxiomConfig,
    check_axioms,
    check_bounds,
    check_compactness,
    check_over_dominance,
    density,
    observed_ratios,
    removal_blocks,
    sweep_ratios,
)
from powersym.errors import DegeneratePartitionError, DomainError, NotAnEliteError
from powersym.generators import ElitisticParams, generate_elitistic
from powersym.graph import Graph
from powersym.influence import Partition, influence_block
from powersym.oracles import brute_force_block, compactness_bruteforce, over_dominance_bruteforce

from .strategies import multigraphs, proper_subsets, vertex_subsets
from .test_graph import complete, star

UNIT = AxiomConfig(1, 1)


def elitistic(Z=1, b=1):
    return generate_elitistic(ElitisticParams(Z, b))


def test_config_coerces_to_fractions():
    cfg = AxiomConfig(0.25, "3/4")
    assert cfg.c_d == Fraction(1, 4) and cfg.c_r == Fraction(3, 4)
    assert cfg.c1 == Fraction(3, 16)
    assert cfg.c2 == 1 / (1 + Fraction(4, 3) + Fraction(16, 3))
    with pytest.raises(ValueError):
        AxiomConfig(0, 1)


def test_ratio_examples():
    s = star()
    assert observed_ratios(s, Partition.from_elite(s, [0])) == (1, Fraction(1, 4))
    g, part = elitistic()
    assert observed_ratios(g, part) == (1, 1)
    k4 = complete(4)
    assert observed_ratios(k4, Partition.from_elite(k4, [0, 1])) == (Fraction(4, 3), Fraction(3, 4))
    with pytest.raises(DegeneratePartitionError):
        observed_ratios(k4, Partition.from_elite(k4, range(4)))


def test_rob_infinite_without_crossing_edges():
    g = Graph(4, [0, 2], [1, 3])
    assert observed_ratios(g, Partition.from_elite(g, [0, 1])).rob == math.inf


def test_density_examples():
    assert density(complete(4), range(4)) == pytest.approx(math.log(10) / math.log(4))
    assert density(Graph(5), [0, 1, 2]) == pytest.approx(1.0)
    g, part = elitistic(2)
    assert density(g, part.elite) == pytest.approx(math.log(496) / math.log(31))
    assert math.log(496) / math.log(31) == pytest.approx(1.8073, abs=1e-4)
    with pytest.raises(DomainError):
        density(g, [0])
    with pytest.raises(DomainError):
        density(Graph(3, self_loop_mode="none"), [0, 1])


def test_axiom_pass_examples():
    g, part = elitistic()
    r = check_axioms(g, part, UNIT)
    assert r.a1_pass and r.a2_pass and r.block.i_ee == r.block.i_ep
    s = star()
    r = check_axioms(s, Partition.from_elite(s, [0]), UNIT)
    assert r.a1_pass and not r.a2_pass
    assert r.compact is False and r.over_dominant is None and r.notes
    assert math.isnan(r.delta_elite) and not r.a4_pass
    k4 = complete(4)
    r = check_axioms(k4, Partition.from_elite(k4, [0, 1, 2]), UNIT)
    # 3 internal edges + 3 loops, 3 crossing edges, and the lone periphery loop
    assert (r.block.i_ee, r.block.i_ep, r.block.i_pp) == (6, 3, 1)
    assert brute_force_block(k4, Partition.from_elite(k4, [0, 1, 2])) == r.block
    assert r.a1_pass and r.a2_pass


def test_compactness_examples():
    g, part = elitistic()
    verts, ee, ep, pp = removal_blocks(g, part)
    # dropping a clique vertex leaves (3, 6, 9): A2 fails
    assert set(zip(ee.tolist(), ep.tolist(), pp.tolist())) == {(3, 6, 9)}
    assert check_compactness(g, part, UNIT).compact
    k4 = complete(4)
    p3 = Partition.from_elite(k4, [0, 1, 2])
    assert check_compactness(k4, p3, UNIT) == (True, None)
    k2 = complete(2)
    with pytest.raises(DegeneratePartitionError):
        check_compactness(k2, Partition.from_elite(k2, [0, 1]), UNIT)
    with pytest.raises(NotAnEliteError):
        check_compactness(star(), Partition.from_elite(5, [0]), UNIT)


def test_over_dominance_examples():
    g, part = elitistic()
    # after a removal A1 reads 6 >= 9, so the elite is compact but not over-dominant
    assert check_over_dominance(g, part, UNIT) is False
    assert over_dominance_bruteforce(g, part, UNIT) is False
    s = star()
    p = Partition.from_elite(s, [0, 1])
    assert check_axioms(s, p, UNIT).compact
    assert check_over_dominance(s, p, UNIT) == over_dominance_bruteforce(s, p, UNIT) is False


def test_bounds_examples():
    g, part = elitistic(2)
    b = check_bounds(g, part)
    assert b.elite_size == 31 and b.sqrt_lb and 31 >= math.sqrt(496)
    r = check_axioms(g, part, UNIT)
    assert r.a4_pass and r.bounds.sublinear_holds


def test_elitistic_report_values():
    g, part = elitistic()
    r = check_axioms(g, part)
    assert r.dom == 1 and r.rob == 1
    assert r.delta_elite == pytest.approx(math.log(6) / math.log(3))
    assert r.delta_graph == pytest.approx(math.log(18) / math.log(9))
    assert r.dns == pytest.approx((r.delta_elite - r.delta_graph) / r.delta_graph)


def test_sweep_rich_markers():
    g, part = elitistic()
    t = sweep_ratios(g, "rich")
    j = t.row(3)
    assert t.dom[j] == 1 and t.rob[j] == 1 and t.is_sp[j]
    assert t.dns[j] == pytest.approx(check_axioms(g, part).dns)
    g2, _ = elitistic(2)
    t2 = sweep_ratios(g2, "rich")
    assert t2.is_sqrt_m.sum() == 1 and t2.is_sp.sum() == 1
    assert t2.k[t2.is_sqrt_m][0] == 34
    # k = n - 1 leaves one periphery vertex whose only internal edge is its loop
    last = t2.row(g2.n - 1)
    assert t2.i_pp[last] == 1 and t2.dom[last] == t2.i_ep[last]
    assert not t2.a1[-1] and not t2.a2[-1]


def test_sweep_log_grid_keeps_markers():
    g, _ = elitistic(2)
    t = sweep_ratios(g, "rich", grid="log", points=20)
    full = sweep_ratios(g, "rich")
    assert len(t) < len(full)
    assert t.k[t.is_sp][0] == full.k[full.is_sp][0]
    assert t.k[t.is_sqrt_m][0] == full.k[full.is_sqrt_m][0]


def test_sweep_core_rows():
    g, part = elitistic()
    t = sweep_ratios(g, "core")
    assert t.threshold.tolist() == [2, 1]
    assert t.k.tolist() == [3, 9]
    assert t.is_sp.tolist() == [True, False]
    with pytest.raises(ValueError):
        sweep_ratios(g, "betweenness")
    with pytest.raises(DomainError):
        sweep_ratios(Graph(1), "rich")


@given(multigraphs(max_n=10), st.data())
def test_removal_blocks_match_recount(g, data):
    elite = data.draw(vertex_subsets(g.n))
    assume(elite)
    part = Partition.from_elite(g, elite)
    verts, ee, ep, pp = removal_blocks(g, part)
    for v, *blk in zip(verts.tolist(), ee.tolist(), ep.tolist(), pp.tolist()):
        ref = brute_force_block(g, Partition.from_elite(g, elite - {v}))
        assert tuple(blk) == (ref.i_ee, ref.i_ep, ref.i_pp)


SCALE = st.fractions(Fraction(1, 8), 1, max_denominator=8)


@st.composite
def elites_with_config(draw, max_n=9):
    """(graph, partition, cfg) with the partition an elite under cfg.

    The observed ratios are scaled down by factors in (0, 1], so equality
    cases come up often.
    """
    g = draw(multigraphs(max_n=max_n, min_n=2, modes=("implicit",)))
    cross = np.flatnonzero(g.src != g.dst)
    assume(cross.size)
    # keep one endpoint of some edge inside and the other outside so that I(E,P) > 0
    inside, outside = int(g.src[cross[0]]), int(g.dst[cross[0]])
    elite = draw(proper_subsets(g.n).map(lambda s: (s | {inside}) - {outside}))
    part = Partition.from_elite(g, elite)
    b = influence_block(g, part)
    cfg = AxiomConfig(Fraction(b.i_ep, b.i_pp) * draw(SCALE), Fraction(b.i_ee, b.i_ep) * draw(SCALE))
    return g, part, cfg


@given(elites_with_config())
def test_compactness_matches_bruteforce(case):
    g, part, cfg = case
    assert check_compactness(g, part, cfg) == compactness_bruteforce(g, part, cfg)
    assert check_over_dominance(g, part, cfg) == over_dominance_bruteforce(g, part, cfg)


@given(elites_with_config(max_n=12))
def test_elites_satisfy_derived_lower_bounds(case):
    g, part, cfg = case
    b = influence_block(g, part)
    assert b.i_ee >= cfg.c1 * b.i_pp
    assert b.i_ee >= cfg.c2 * g.m_total


@given(multigraphs(max_n=15, modes=("implicit",)), st.data())
def test_sqrt_lower_bound_on_simple_graphs(g, data):
    g = g.simplified()
    elite = data.draw(vertex_subsets(g.n))
    assume(elite)
    b = influence_block(g, Partition.from_elite(g, elite))
    assert len(elite) ** 2 >= b.i_ee


@given(multigraphs(max_n=12), st.data())
def test_sweep_rows_match_reports(g, data):
    assume(g.n >= 2)
    t = sweep_ratios(g, "rich")
    j = data.draw(st.integers(0, len(t) - 1))
    k = int(t.k[j])
    part = Partition.from_elite(g, np.argsort(-g.degree, kind="stable")[:k])
    b = influence_block(g, part)
    assert (t.i_ee[j], t.i_ep[j], t.i_pp[j]) == (b.i_ee, b.i_ep, b.i_pp)
    if k < g.n and b.i_pp > 0:
        dom, rob = observed_ratios(g, part)
        assert t.dom[j] == pytest.approx(float(dom))
        assert t.rob[j] == pytest.approx(float(rob))
