"""Influence quantities between vertex sets and elite shift diagrams."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import kernels
from .graph import Graph, vertex_mask


@dataclass(frozen=True, eq=False)
class Partition:
    """Elite/periphery split of the vertex set, stored as a membership mask."""

    membership: np.ndarray

    @classmethod
    def from_elite(cls, graph_or_n, elite) -> "Partition":
        n = graph_or_n if isinstance(graph_or_n, (int, np.integer)) else graph_or_n.n
        if isinstance(graph_or_n, Graph):
            mask = vertex_mask(graph_or_n, elite)
        else:
            mask = vertex_mask(Graph(n), elite)
        mask = mask.copy()
        mask.flags.writeable = False
        return cls(mask)

    @property
    def n(self) -> int:
        return int(self.membership.size)

    @cached_property
    def elite(self) -> np.ndarray:
        return np.flatnonzero(self.membership)

    @cached_property
    def periphery(self) -> np.ndarray:
        return np.flatnonzero(~self.membership)

    @property
    def elite_size(self) -> int:
        return int(self.elite.size)

    def __eq__(self, other):
        return isinstance(other, Partition) and np.array_equal(self.membership, other.membership)

    def __repr__(self):
        return f"Partition(n={self.n}, elite_size={self.elite_size})"


@dataclass(frozen=True)
class InfluenceBlock:
    i_ee: int
    i_ep: int
    i_pp: int
    m_total: int

    @property
    def elite_total(self) -> int:
        """I(E) = I(E,E) + I(E,P)."""
        return self.i_ee + self.i_ep

    @property
    def periphery_total(self) -> int:
        return self.i_pp + self.i_ep

    def fractions(self) -> tuple[float, float, float]:
        m = self.m_total
        if m == 0:
            return (math.nan, math.nan, math.nan)
        return (self.i_ee / m, self.i_ep / m, self.i_pp / m)


def influence_between(graph: Graph, X, Y) -> int:
    """I(X,Y) = |E(X,Y)|; a loop at v counts once when v is in both sets."""
    x = vertex_mask(graph, X)
    y = vertex_mask(graph, Y)
    a, b = graph.src, graph.dst
    hit = (x[a] & y[b]) | (y[a] & x[b])
    return int(hit.sum()) + int(graph.loop_counts[x & y].sum())


def influence_block(graph: Graph, partition: Partition) -> InfluenceBlock:
    e = partition.membership
    if e.size != graph.n:
        raise ValueError("partition size does not match graph")
    ea = e[graph.src]
    eb = e[graph.dst]
    loops = graph.loop_counts
    l_e = int(loops[e].sum())
    i_ee = int((ea & eb).sum()) + l_e
    i_ep = int((ea ^ eb).sum())
    i_pp = graph.m_total - i_ee - i_ep
    return InfluenceBlock(i_ee, i_ep, i_pp, graph.m_total)


def total_influence(graph: Graph, X) -> int:
    """I(X) = I(X,X) + I(X, V minus X)."""
    x = vertex_mask(graph, X)
    return influence_between(graph, x, x) + influence_between(graph, x, ~x)


# --------------------------------------------------------------------------
# shift diagrams
# --------------------------------------------------------------------------


def degree_ordering(graph: Graph) -> np.ndarray:
    """Vertices by descending degree, ties by ascending id."""
    return np.argsort(-graph.degree, kind="stable").astype(np.int64)


def check_permutation(order, n) -> np.ndarray:
    order = np.asarray(order, dtype=np.int64).ravel()
    if order.size != n or (n and (order.min() < 0 or order.max() >= n)):
        raise ValueError(f"ordering is not a permutation of 0..{n - 1}")
    if n and not np.all(np.bincount(order, minlength=n) == 1):
        raise ValueError(f"ordering is not a permutation of 0..{n - 1}")
    return order


@dataclass(frozen=True, eq=False)
class ShiftDiagram:
    """Blocks of the partitions (first k of ordering, rest) for k = 0..n."""

    ordering: np.ndarray
    i_ee: np.ndarray
    i_ep: np.ndarray
    i_pp: np.ndarray
    m_total: int
    self_loop_mode: str = "implicit"

    @property
    def n(self) -> int:
        return int(self.ordering.size)

    @cached_property
    def k_sp(self) -> int:
        # np.argmin/argmax return the first extremum: ties go to the smaller k.
        return int(np.argmin(np.abs(self.i_ee - self.i_pp)))

    @cached_property
    def k_crossmax(self) -> int:
        return int(np.argmax(self.i_ep))

    def block(self, k) -> InfluenceBlock:
        return InfluenceBlock(int(self.i_ee[k]), int(self.i_ep[k]), int(self.i_pp[k]), self.m_total)

    def partition(self, k) -> Partition:
        mask = np.zeros(self.n, bool)
        mask[self.ordering[:k]] = True
        mask.flags.writeable = False
        return Partition(mask)


def shift_diagram(graph: Graph, ordering=None, backend=None) -> ShiftDiagram:
    """Move vertices from the periphery to the elite one at a time along *ordering*.

    Costs O(n + m).  *ordering* defaults to :func:`degree_ordering`.
    """
    if ordering is None:
        ordering = degree_ordering(graph)
    else:
        ordering = check_permutation(ordering, graph.n)
    ee, ep, pp = kernels.shift_sweep(graph, ordering, backend=backend)
    for arr in (ordering, ee, ep, pp):
        arr.flags.writeable = False
    return ShiftDiagram(ordering, ee, ep, pp, graph.m_total, graph.self_loop_mode)


class SymmetryPoint(NamedTuple):
    k_sp: int
    block: InfluenceBlock


def symmetry_point(diagram: ShiftDiagram) -> SymmetryPoint:
    return SymmetryPoint(diagram.k_sp, diagram.block(diagram.k_sp))


def k_sqrt_m(graph_or_m) -> int:
    """ceil(sqrt(m_total))."""
    m = graph_or_m if isinstance(graph_or_m, (int, np.integer)) else graph_or_m.m_total
    r = math.isqrt(int(m))
    return r if r * r == m else r + 1


def log_position(k, n):
    """x = ln(k)/ln(n), so that k = n^x; NaN where undefined."""
    k = np.asarray(k, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        x = np.log(k) / math.log(n) if n > 1 else np.full(k.shape, np.nan)
    return np.where(k > 0, x, np.nan)
