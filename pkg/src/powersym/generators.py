"""Synthetic graphs: configuration-model multigraphs, the purely elitistic
family, square grids, and a timestamped elitistic growth process."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .graph import Graph, TimestampedEdgeList
from .influence import Partition


@dataclass(frozen=True, eq=False)
class DegreeSequence:
    """Ordered degree sequence; order matters for prefix partitions."""

    d: np.ndarray

    def __init__(self, d):
        arr = np.asarray(d, dtype=np.int64).ravel()
        if arr.size == 0:
            raise DomainError("empty degree sequence")
        if arr.min() < 0:
            raise DomainError("degrees must be non-negative")
        if int(arr.sum()) % 2:
            raise DomainError(f"degree sum {int(arr.sum())} is odd")
        arr.flags.writeable = False
        object.__setattr__(self, "d", arr)

    def __len__(self):
        return int(self.d.size)

    @property
    def n(self) -> int:
        return int(self.d.size)

    @property
    def m(self) -> int:
        return int(self.d.sum()) // 2

    @property
    def in_theorem_range(self) -> bool:
        """1 <= d_i <= n - 1 for every i."""
        return bool(self.d.min() >= 1 and self.d.max() <= self.n - 1)

    @classmethod
    def parse(cls, text: str) -> "DegreeSequence":
        """Integers separated by commas and/or whitespace."""
        tokens = text.replace(",", " ").split()
        try:
            return cls([int(t) for t in tokens])
        except ValueError as exc:
            raise DomainError(f"bad degree sequence: {exc}") from None


def generate_configuration(seq: DegreeSequence, seed=None) -> Graph:
    """Uniform random pairing of stubs; loops and parallel edges are kept.

    The result uses the ``none`` self-loop convention, so its stub degrees
    equal *seq* exactly.
    """
    if not isinstance(seq, DegreeSequence):
        seq = DegreeSequence(seq)
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(seq.n, dtype=np.int64), seq.d)
    rng.shuffle(stubs)
    pairs = stubs.reshape(-1, 2)
    return Graph(seq.n, pairs[:, 0], pairs[:, 1], self_loop_mode="none")


def degree_symmetry_point(seq: DegreeSequence) -> int:
    """kappa: 1-based j minimising |sum(d[:j]) - sum(d[j:])|, ties to the smaller j."""
    if not isinstance(seq, DegreeSequence):
        seq = DegreeSequence(seq)
    prefix = np.cumsum(seq.d)
    return int(np.argmin(np.abs(2 * prefix - 2 * seq.m))) + 1


class ExpectedInfluence(NamedTuple):
    e_ep: Fraction
    e_ee: Fraction
    e_pp: Fraction


def mass_fraction(seq: DegreeSequence, i: int) -> Fraction:
    """D(1, i): share of stubs owned by the first i vertices."""
    return Fraction(int(seq.d[:i].sum()), 2 * seq.m)


def expected_influence(seq: DegreeSequence, i: int) -> ExpectedInfluence:
    """Product-form expectations for the prefix partition ``E = first i``.

    e_ep = 2 D(1,i) D(i+1,n) m,  e_ee = D(1,i)^2 m,  e_pp = D(i+1,n)^2 m.
    Exact rationals.
    """
    if not isinstance(seq, DegreeSequence):
        seq = DegreeSequence(seq)
    if not 1 <= i <= seq.n:
        raise DomainError(f"prefix index must be in 1..{seq.n}, got {i}")
    if seq.m == 0:
        return ExpectedInfluence(Fraction(0), Fraction(0), Fraction(0))
    head = mass_fraction(seq, i)
    tail = 1 - head
    m = seq.m
    return ExpectedInfluence(2 * head * tail * m, head * head * m, tail * tail * m)


def powerlaw_degree_sequence(n, exponent=2.5, d_min=1, d_max=None, seed=None) -> DegreeSequence:
    """Discrete power-law degrees in [d_min, d_max]; the last entry is bumped if the sum is odd."""
    rng = np.random.default_rng(seed)
    d_max = n - 1 if d_max is None else d_max
    support = np.arange(d_min, d_max + 1, dtype=np.int64)
    weights = support.astype(float) ** (-exponent)
    d = rng.choice(support, size=n, p=weights / weights.sum())
    if d.sum() % 2:
        d[-1] += 1 if d[-1] < d_max else -1
    return DegreeSequence(d)


# --------------------------------------------------------------------------
# purely elitistic family
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ElitisticParams:
    Z: int
    b: int = 1

    def __post_init__(self):
        if self.Z < 1 or self.b < 1:
            raise DomainError("Z and b must be positive integers")

    @property
    def elite_size(self) -> int:
        return 4 * self.Z**3 - 1

    @property
    def periphery_size(self) -> int:
        return 2 * self.b * self.Z * self.elite_size

    @property
    def n(self) -> int:
        return 8 * self.b * self.Z**4 + 4 * self.Z**3 - 2 * self.b * self.Z - 1

    def closed_forms(self) -> dict:
        Z, b = self.Z, self.b
        return {
            "n": self.n,
            "i_ee": 2 * Z**3 * (4 * Z**3 - 1),
            "i_ep": 2 * b * Z**3 * (4 * Z**3 - 1),
            "i_pp": 2 * b * Z * (4 * Z**3 - 1),
        }


def generate_elitistic(params: ElitisticParams) -> tuple[Graph, Partition]:
    """Elite clique wired biregularly to an edgeless periphery.

    Elite vertex i takes cross-stubs ``t`` in ``[i*s, (i+1)*s)`` with
    ``s = 2bZ^3`` and links to periphery vertex ``t mod |P|``: every elite
    vertex gets s distinct periphery neighbours and every periphery vertex Z^2
    distinct elite neighbours.  Vertices ``0..eps-1`` are the elite.
    """
    eps = params.elite_size
    size_p = params.periphery_size
    per_elite = 2 * params.b * params.Z**3
    iu, ju = np.triu_indices(eps, k=1)
    t = np.arange(eps * per_elite, dtype=np.int64)
    src = np.concatenate([iu, t // per_elite])
    dst = np.concatenate([ju, eps + t % size_p])
    graph = Graph(eps + size_p, src, dst, self_loop_mode="implicit")
    return graph, Partition.from_elite(graph, np.arange(eps))


def generate_grid(side: int) -> Graph:
    """side x side lattice with 4-neighbour edges; vertex (r, c) has id r*side + c."""
    if side < 2:
        raise DomainError("grid side must be at least 2")
    ids = np.arange(side * side, dtype=np.int64).reshape(side, side)
    src = np.concatenate([ids[:, :-1].ravel(), ids[:-1, :].ravel()])
    dst = np.concatenate([ids[:, 1:].ravel(), ids[1:, :].ravel()])
    return Graph(side * side, src, dst, self_loop_mode="implicit")


def generate_elitistic_growth(n_final: int, b: int = 1) -> TimestampedEdgeList:
    """Deterministic growth process that tracks the elitistic family.

    Vertex j arrives at time j.  With population N and Z = (N / 8b)^(1/4), the
    elite is kept at about 4 Z^3 members: a newcomer joins the elite clique
    while it is below that size, otherwise it becomes a periphery vertex linked
    to about Z^2 elite members chosen round-robin.
    """
    if n_final < 2:
        raise DomainError("growth process needs at least 2 vertices")
    elite = np.empty(n_final, np.int64)
    n_elite = 0
    cursor = 0
    us, vs, ts = [], [], []
    for j in range(n_final):
        z = ((j + 1) / (8 * b)) ** 0.25
        target = max(2, round(4 * z**3))
        if n_elite < target:
            if n_elite:
                us.append(np.full(n_elite, j, np.int64))
                vs.append(elite[:n_elite].copy())
                ts.append(np.full(n_elite, j, np.int64))
            elite[n_elite] = j
            n_elite += 1
        else:
            s = min(n_elite, max(1, round(z * z)))
            picks = elite[(cursor + np.arange(s)) % n_elite]
            cursor = (cursor + s) % n_elite
            us.append(np.full(s, j, np.int64))
            vs.append(picks)
            ts.append(np.full(s, j, np.int64))
    return TimestampedEdgeList(
        np.concatenate(us), np.concatenate(vs), np.concatenate(ts),
        labels=[str(i) for i in range(n_final)], sorted_by_time=True,
    )
