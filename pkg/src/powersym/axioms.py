"""Dominance/robustness/compactness/density checks and the size bounds they imply."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Union

import numpy as np

from .errors import DegeneratePartitionError, DomainError, NotAnEliteError
from .graph import Graph, vertex_mask
from .influence import (
    InfluenceBlock,
    Partition,
    degree_ordering,
    influence_between,
    influence_block,
    k_sqrt_m,
    log_position,
    shift_diagram,
)

Ratio = Union[Fraction, float]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class AxiomConfig:
    c_d: Fraction = Fraction(1)
    c_r: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "c_d", _as_fraction(self.c_d))
        object.__setattr__(self, "c_r", _as_fraction(self.c_r))
        if self.c_d <= 0 or self.c_r <= 0:
            raise ValueError("c_d and c_r must be positive")

    def dominance_holds(self, block: InfluenceBlock) -> bool:
        return block.i_ep >= self.c_d * block.i_pp

    def robustness_holds(self, block: InfluenceBlock) -> bool:
        return block.i_ee >= self.c_r * block.i_ep

    @property
    def c1(self) -> Fraction:
        """I(E,E) >= c1 * I(P,P) for any partition meeting A1 and A2."""
        return self.c_r * self.c_d

    @property
    def c2(self) -> Fraction:
        """I(E,E) >= c2 * m for any partition meeting A1 and A2."""
        return 1 / (1 + 1 / self.c_r + 1 / (self.c_r * self.c_d))


def _require_proper(partition: Partition) -> None:
    k = partition.elite_size
    if k == 0 or k == partition.n:
        raise DegeneratePartitionError("degenerate partition: elite and periphery must both be nonempty")


class Ratios(NamedTuple):
    dom: Ratio
    rob: Ratio


def observed_ratios(graph: Graph, partition: Partition) -> Ratios:
    """dom = I(E,P)/I(P,P) and rob = I(E,E)/I(E,P) as exact fractions.

    rob is ``math.inf`` when there are no crossing edges.
    """
    _require_proper(partition)
    return _ratios(influence_block(graph, partition))


def _ratios(block: InfluenceBlock) -> Ratios:
    if block.i_pp == 0:
        raise DegeneratePartitionError("dominance ratio undefined: I(P,P) = 0")
    dom = Fraction(block.i_ep, block.i_pp)
    rob = Fraction(block.i_ee, block.i_ep) if block.i_ep else math.inf
    return Ratios(dom, rob)


def density(graph: Graph, X) -> float:
    """ln|E(X,X)| / ln|X| under the graph's self-loop convention."""
    x = vertex_mask(graph, X)
    size = int(x.sum())
    if size <= 1:
        raise DomainError("density undefined for singleton or empty set")
    internal = influence_between(graph, x, x)
    if internal == 0:
        raise DomainError("density undefined: set has no internal edges")
    return math.log(internal) / math.log(size)


# --------------------------------------------------------------------------
# single-vertex removals
# --------------------------------------------------------------------------


def removal_blocks(graph: Graph, partition: Partition):
    """Blocks after moving each elite vertex to the periphery on its own.

    Returns ``(vertices, i_ee, i_ep, i_pp)`` with one entry per elite vertex.
    """
    e = partition.membership
    n = graph.n
    a, b = graph.src, graph.dst
    ea, eb = e[a], e[b]
    both = ea & eb
    to_elite = np.bincount(a[both], minlength=n) + np.bincount(b[both], minlength=n)
    cross_a = ea & ~eb
    cross_b = eb & ~ea
    to_periphery = np.bincount(a[cross_a], minlength=n) + np.bincount(b[cross_b], minlength=n)
    block = influence_block(graph, partition)
    verts = partition.elite
    loops = graph.loop_counts[verts]
    d_e = to_elite[verts]
    d_p = to_periphery[verts]
    return (
        verts,
        block.i_ee - d_e - loops,
        block.i_ep - d_p + d_e,
        block.i_pp + d_p + loops,
    )


def _axiom_masks(cfg: AxiomConfig, i_ee, i_ep, i_pp):
    # exact rational comparisons: i_ep * den >= num * i_pp
    d_num, d_den = cfg.c_d.numerator, cfg.c_d.denominator
    r_num, r_den = cfg.c_r.numerator, cfg.c_r.denominator
    i_ee, i_ep, i_pp = (np.asarray(a, dtype=np.int64) for a in (i_ee, i_ep, i_pp))
    biggest = max((int(np.abs(a).max(initial=0)) for a in (i_ee, i_ep, i_pp)), default=0)
    dtype = np.int64 if biggest * max(d_num, d_den, r_num, r_den) < 2**62 else object
    i_ee, i_ep, i_pp = (a.astype(dtype) for a in (i_ee, i_ep, i_pp))
    a1 = i_ep * d_den >= i_pp * d_num
    a2 = i_ee * r_den >= i_ep * r_num
    return np.asarray(a1, dtype=bool), np.asarray(a2, dtype=bool)


def _require_elite(graph, partition, cfg) -> InfluenceBlock:
    _require_proper(partition)
    block = influence_block(graph, partition)
    if not (cfg.dominance_holds(block) and cfg.robustness_holds(block)):
        raise NotAnEliteError("not an elite under config: A1 and A2 must both hold")
    return block


class Compactness(NamedTuple):
    compact: bool
    witness: Optional[int]


def check_compactness(graph: Graph, partition: Partition, cfg: AxiomConfig) -> Compactness:
    """Single-vertex minimality: every removal must break A1 or A2.

    The witness is the smallest elite vertex whose removal keeps both axioms.
    """
    _require_elite(graph, partition, cfg)
    verts, ee, ep, pp = removal_blocks(graph, partition)
    a1, a2 = _axiom_masks(cfg, ee, ep, pp)
    survivors = verts[a1 & a2]
    if survivors.size:
        return Compactness(False, int(survivors[0]))
    return Compactness(True, None)


def check_over_dominance(graph: Graph, partition: Partition, cfg: AxiomConfig) -> bool:
    """True iff every single-vertex removal keeps A1."""
    _require_elite(graph, partition, cfg)
    _, ee, ep, pp = removal_blocks(graph, partition)
    a1, _ = _axiom_masks(cfg, ee, ep, pp)
    return bool(a1.all())


# --------------------------------------------------------------------------
# size bounds
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Bounds:
    elite_size: int
    sqrt_lb: bool
    m_pow: float
    size_ratio: float
    exponent: float
    sublinear_bound: float
    sublinear_holds: bool


def _bounds_from(k, n, block: InfluenceBlock, delta_elite, delta_graph) -> Bounds:
    m = block.m_total
    sqrt_lb = k * k >= block.i_ee
    if delta_elite > 0 and delta_graph == delta_graph:
        m_pow = m ** (1.0 / delta_elite)
        exponent = delta_graph / delta_elite
        bound = n ** exponent
    else:
        m_pow = exponent = bound = math.nan
    return Bounds(
        elite_size=k,
        sqrt_lb=bool(sqrt_lb),
        m_pow=m_pow,
        size_ratio=k / m_pow,
        exponent=exponent,
        sublinear_bound=bound,
        sublinear_holds=bool(k <= bound),  # False when the bound is undefined
    )


def check_bounds(graph: Graph, partition: Partition) -> Bounds:
    """|E| >= sqrt(I(E,E)), |E| against m^(1/delta_E), and |E| <= n^(delta_V/delta_E)."""
    k = partition.elite_size
    if k < 2:
        raise DomainError("bounds need an elite of at least 2 vertices")
    block = influence_block(graph, partition)
    return _bounds_from(
        k, graph.n, block, density(graph, partition.membership), density(graph, np.ones(graph.n, bool))
    )


# --------------------------------------------------------------------------
# full report
# --------------------------------------------------------------------------


@dataclass
class AxiomReport:
    block: InfluenceBlock
    config: AxiomConfig
    self_loop_mode: str
    elite_size: int
    n: int
    dom: Ratio
    rob: Ratio
    delta_elite: float
    delta_graph: float
    dns: float
    a1_pass: bool
    a2_pass: bool
    a4_pass: bool
    compact: bool
    compact_witness: Optional[int]
    over_dominant: Optional[bool]
    bounds: Bounds
    notes: list = field(default_factory=list)


def _density_or_nan(graph, mask, notes) -> float:
    try:
        return density(graph, mask)
    except DomainError as exc:
        notes.append(str(exc))
        return math.nan


def check_axioms(graph: Graph, partition: Partition, cfg: AxiomConfig | None = None) -> AxiomReport:
    cfg = cfg or AxiomConfig()
    _require_proper(partition)
    block = influence_block(graph, partition)
    dom, rob = _ratios(block)
    notes = []
    delta_e = _density_or_nan(graph, partition.membership, notes)
    delta_v = _density_or_nan(graph, np.ones(graph.n, bool), notes)
    a1 = cfg.dominance_holds(block)
    a2 = cfg.robustness_holds(block)
    if a1 and a2:
        compact, witness = check_compactness(graph, partition, cfg)
        over = check_over_dominance(graph, partition, cfg) if compact else None
    else:
        compact, witness, over = False, None, None
        notes.append("compactness not evaluated: A1 and A2 do not both hold")
    a4 = delta_e > 0 and delta_v / delta_e < 1
    return AxiomReport(
        block=block,
        config=cfg,
        self_loop_mode=graph.self_loop_mode,
        elite_size=partition.elite_size,
        n=graph.n,
        dom=dom,
        rob=rob,
        delta_elite=delta_e,
        delta_graph=delta_v,
        dns=(delta_e - delta_v) / delta_v if delta_v else math.nan,
        a1_pass=bool(a1),
        a2_pass=bool(a2),
        a4_pass=bool(a4),
        compact=bool(compact),
        compact_witness=witness,
        over_dominant=over,
        bounds=_bounds_from(partition.elite_size, graph.n, block, delta_e, delta_v),
        notes=notes,
    )


# --------------------------------------------------------------------------
# sweeps over elite size
# --------------------------------------------------------------------------


@dataclass
class SweepTable:
    method: str
    n: int
    m_total: int
    k: np.ndarray
    i_ee: np.ndarray
    i_ep: np.ndarray
    i_pp: np.ndarray
    dom: np.ndarray
    rob: np.ndarray
    dns: np.ndarray
    a1: np.ndarray
    a2: np.ndarray
    a4: np.ndarray
    is_sqrt_m: np.ndarray
    is_sp: np.ndarray
    threshold: Optional[np.ndarray] = None

    @property
    def x(self) -> np.ndarray:
        return log_position(self.k, self.n)

    def __len__(self):
        return int(self.k.size)

    def row(self, k):
        """Index of the first row with elite size *k*."""
        hits = np.flatnonzero(self.k == k)
        if not hits.size:
            raise KeyError(k)
        return int(hits[0])


def _log_grid(n, points, extra):
    grid = np.unique(np.round(np.geomspace(1, n, num=min(points, n))).astype(np.int64))
    return np.unique(np.concatenate([grid, np.asarray([e for e in extra if 1 <= e <= n], np.int64)]))


def _safe_div(num, den):
    num = num.astype(float)
    den = den.astype(float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(den > 0, num / np.where(den > 0, den, 1), np.where(num > 0, np.inf, np.nan))


def sweep_ratios(
    graph: Graph,
    method: str = "rich",
    cfg: AxiomConfig | None = None,
    grid: str = "full",
    points: int = 200,
    backend=None,
) -> SweepTable:
    """dom/rob/dns and axiom flags along rich-club sizes or c-core thresholds.

    ``rich`` rows are k = 1..n (or a log-spaced subset with ``grid="log"``);
    ``core`` rows run from the innermost core outwards, c = max..1.
    """
    cfg = cfg or AxiomConfig()
    n = graph.n
    if n < 2:
        raise DomainError("graph too small")
    if method == "rich":
        diagram = shift_diagram(graph, degree_ordering(graph), backend=backend)
        k_sp = diagram.k_sp
        target = k_sqrt_m(graph)
        if grid == "full":
            ks = np.arange(1, n + 1, dtype=np.int64)
        elif grid == "log":
            ks = _log_grid(n, points, (target, k_sp))
        else:
            raise ValueError(f"unknown grid {grid!r}")
        thresholds = None
    elif method == "core":
        from .elites import core_decomposition

        dec = core_decomposition(graph, backend=backend)
        diagram = shift_diagram(graph, dec.ordering(graph.degree), backend=backend)
        thresholds = np.arange(dec.max_coreness, 0, -1, dtype=np.int64)
        sizes = dec.size_by_threshold
        ks = np.asarray([sizes[c] for c in thresholds], dtype=np.int64)
        k_sp = None
        target = k_sqrt_m(graph)
    else:
        raise ValueError(f"unknown method {method!r}")

    ee = diagram.i_ee[ks].astype(np.int64)
    ep = diagram.i_ep[ks].astype(np.int64)
    pp = diagram.i_pp[ks].astype(np.int64)
    if k_sp is None:
        k_sp = int(ks[np.argmin(np.abs(ee - pp))]) if ks.size else 0

    dom = _safe_div(ep, pp)
    rob = _safe_div(ee, ep)
    delta_graph = math.log(graph.m_total) / math.log(n) if graph.m_total > 0 else math.nan
    with np.errstate(divide="ignore", invalid="ignore"):
        delta_k = np.where((ks >= 2) & (ee > 0), np.log(np.maximum(ee, 1)) / np.log(np.maximum(ks, 2)), np.nan)
        dns = (delta_k - delta_graph) / delta_graph
        a4 = (delta_k > 0) & (delta_graph / np.where(delta_k > 0, delta_k, 1) < 1)
    a1, a2 = _axiom_masks(cfg, ee, ep, pp)
    proper = ks < n
    a1 &= proper
    a2 &= proper
    a4 &= proper

    is_sp = ks == k_sp
    is_sqrt = np.zeros(ks.size, bool)
    if ks.size:
        gap = np.abs(ks - target)
        is_sqrt = ks == ks[np.argmin(gap)]

    return SweepTable(
        method=method, n=n, m_total=graph.m_total, k=ks, i_ee=ee, i_ep=ep, i_pp=pp,
        dom=dom, rob=rob, dns=dns, a1=a1, a2=a2, a4=a4,
        is_sqrt_m=is_sqrt, is_sp=is_sp, threshold=thresholds,
    )
