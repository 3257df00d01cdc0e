"""Brute-force references kept independent of the fast paths.

Nothing here touches the CSR adjacency or the sweep kernels: blocks are
counted by walking the raw edge list in Python, minimal elites by enumerating
subsets, and configuration-model expectations by sampling pairings.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Optional

import numpy as np

from .axioms import AxiomConfig
from .errors import DomainError
from .generators import DegreeSequence
from .graph import Graph
from .influence import InfluenceBlock, Partition

MAX_EXHAUSTIVE_N = 20


def _loop_list(graph: Graph) -> list:
    if graph.self_loop_mode == "implicit":
        return list(range(graph.n))
    return [v for v, c in enumerate(graph.explicit_loops.tolist()) for _ in range(c)]


def _edge_list(graph: Graph) -> list:
    edges = [(int(a), int(b)) for a, b in zip(graph.src.tolist(), graph.dst.tolist())]
    return edges + [(v, v) for v in _loop_list(graph)]


def brute_force_block(graph: Graph, partition: Partition) -> InfluenceBlock:
    members = set(partition.elite.tolist())
    ee = ep = pp = 0
    for a, b in _edge_list(graph):
        ina, inb = a in members, b in members
        if ina and inb:
            ee += 1
        elif ina or inb:
            ep += 1
        else:
            pp += 1
    return InfluenceBlock(ee, ep, pp, ee + ep + pp)


def _satisfies(block: InfluenceBlock, cfg: AxiomConfig) -> bool:
    return block.i_ep >= cfg.c_d * block.i_pp and block.i_ee >= cfg.c_r * block.i_ep


def compactness_bruteforce(graph: Graph, partition: Partition, cfg: AxiomConfig):
    """(compact, witness) by recomputing every single-vertex removal from scratch."""
    elite = partition.elite.tolist()
    for v in elite:
        rest = [u for u in elite if u != v]
        if _satisfies(brute_force_block(graph, Partition.from_elite(graph, rest)), cfg):
            return False, v
    return True, None


def over_dominance_bruteforce(graph: Graph, partition: Partition, cfg: AxiomConfig) -> bool:
    elite = partition.elite.tolist()
    for v in elite:
        block = brute_force_block(graph, Partition.from_elite(graph, [u for u in elite if u != v]))
        if not block.i_ep >= cfg.c_d * block.i_pp:
            return False
    return True


def is_minimal_exhaustive(graph: Graph, partition: Partition, cfg: AxiomConfig) -> bool:
    """Full A3: no nonempty proper subset of the elite satisfies A1 and A2."""
    elite = partition.elite.tolist()
    if len(elite) > MAX_EXHAUSTIVE_N:
        raise DomainError(f"exhaustive minimality limited to elites of {MAX_EXHAUSTIVE_N} vertices")
    for size in range(1, len(elite)):
        for subset in combinations(elite, size):
            if _satisfies(brute_force_block(graph, Partition.from_elite(graph, list(subset))), cfg):
                return False
    return True


# --------------------------------------------------------------------------
# coreness by definition
# --------------------------------------------------------------------------


def coreness_by_threshold(graph: Graph) -> list:
    """For each c, strip vertices of degree < c until stable; coreness is the last c survived."""
    adj = [[] for _ in range(graph.n)]
    for a, b in zip(graph.src.tolist(), graph.dst.tolist()):
        adj[a].append(b)
        adj[b].append(a)
    core = [0] * graph.n
    c = 1
    alive = set(range(graph.n))
    while alive:
        deg = {v: sum(1 for u in adj[v] if u in alive) for v in alive}
        changed = True
        while changed:
            changed = False
            for v in list(alive):
                if deg[v] < c:
                    alive.discard(v)
                    changed = True
                    for u in adj[v]:
                        if u in alive:
                            deg[u] -= 1
        for v in alive:
            core[v] = c
        c += 1
    return core


def coreness_exhaustive(graph: Graph) -> list:
    """max c such that v lies in some vertex subset inducing minimum degree >= c (n <= 16)."""
    n = graph.n
    if n > 16:
        raise DomainError("exhaustive coreness limited to 16 vertices")
    edges = list(zip(graph.src.tolist(), graph.dst.tolist()))
    best = [0] * n
    for mask in range(1, 1 << n):
        deg = [0] * n
        for a, b in edges:
            if mask >> a & 1 and mask >> b & 1:
                deg[a] += 1
                deg[b] += 1
        members = [v for v in range(n) if mask >> v & 1]
        low = min(deg[v] for v in members)
        for v in members:
            if low > best[v]:
                best[v] = low
    return best


# --------------------------------------------------------------------------
# minimal elites
# --------------------------------------------------------------------------


class MinElite(NamedTuple):
    size: Optional[int]
    example_set: Optional[tuple]
    i_ee: Optional[int]
    sqrt_bound_holds: Optional[bool]


def min_elite_exhaustive(graph: Graph, cfg: AxiomConfig | None = None) -> MinElite:
    """Smallest nonempty proper vertex subset meeting A1 and A2.

    Sizes are scanned smallest first and the scan stops at the first size with
    a qualifying set; within a size the lexicographically first set is
    reported.  ``size`` is None when no subset qualifies.
    """
    cfg = cfg or AxiomConfig()
    n = graph.n
    if n > MAX_EXHAUSTIVE_N:
        raise DomainError(f"exhaustive search limited to {MAX_EXHAUSTIVE_N} vertices, got {n}")
    # dense counts, built from the raw edge list
    A = np.zeros((n, n), np.int64)
    for a, b in zip(graph.src.tolist(), graph.dst.tolist()):
        A[a, b] += 1
        A[b, a] += 1
    loops = np.zeros(n, np.int64)
    for v in _loop_list(graph):
        loops[v] += 1
    deg = A.sum(axis=1)
    m_total = int(A.sum()) // 2 + int(loops.sum())
    d_num, d_den = cfg.c_d.numerator, cfg.c_d.denominator
    r_num, r_den = cfg.c_r.numerator, cfg.c_r.denominator
    for size in range(1, n):
        combos = np.array(list(combinations(range(n), size)), dtype=np.int64)
        for chunk in np.array_split(combos, max(1, len(combos) // 4096)):
            X = np.zeros((len(chunk), n), np.int64)
            np.put_along_axis(X, chunk, 1, axis=1)
            internal = np.einsum("si,ij,sj->s", X, A, X) // 2
            ee = internal + X @ loops
            ep = X @ deg - 2 * internal
            pp = m_total - ee - ep
            ok = (ep * d_den >= pp * d_num) & (ee * r_den >= ep * r_num)
            if ok.any():
                j = int(np.flatnonzero(ok)[0])
                witness = tuple(int(v) for v in chunk[j])
                i_ee = int(ee[j])
                return MinElite(size, witness, i_ee, size * size >= i_ee)
    return MinElite(None, None, None, None)


# --------------------------------------------------------------------------
# configuration model expectations
# --------------------------------------------------------------------------


class PairingExpectation(NamedTuple):
    e_ep: Fraction
    e_ee: Fraction
    e_pp: Fraction


def exact_pairing_expectation(seq: DegreeSequence, i: int) -> PairingExpectation:
    """Exact expectations over uniform pairings for the prefix partition.

    A given stub pairs with each of the other 2m - 1 stubs with equal
    probability, so E[I(E,P)] = S_E S_P / (2m - 1) and
    E[I(E,E)] = S_E (S_E - 1) / (2 (2m - 1)), with S_X the stub count of X.
    """
    if not isinstance(seq, DegreeSequence):
        seq = DegreeSequence(seq)
    s_e = int(seq.d[:i].sum())
    s_p = 2 * seq.m - s_e
    w = 2 * seq.m - 1
    if w <= 0:
        return PairingExpectation(Fraction(0), Fraction(0), Fraction(0))
    return PairingExpectation(
        Fraction(s_e * s_p, w), Fraction(s_e * (s_e - 1), 2 * w), Fraction(s_p * (s_p - 1), 2 * w)
    )


class MonteCarloResult(NamedTuple):
    mean_ep: float
    mean_ee: float
    mean_pp: float
    stderr_ep: float
    stderr_ee: float
    stderr_pp: float
    trials: int

    @property
    def stderr(self) -> float:
        return self.stderr_ep


TRIALS_PER_CHUNK = 1000


def _chunk_counts(flags, trials, entropy, chunk_index):
    rng = np.random.default_rng(np.random.SeedSequence(entropy, spawn_key=(chunk_index,)))
    batch = rng.permuted(np.broadcast_to(flags, (trials, flags.size)), axis=1)
    pairs = batch.reshape(trials, -1, 2)
    left, right = pairs[..., 0], pairs[..., 1]
    ep = (left != right).sum(axis=1)
    ee = (left & right).sum(axis=1)
    pp = pairs.shape[1] - ep - ee
    return np.stack([ep, ee, pp]).astype(np.float64)


def monte_carlo_expected_influence(
    seq: DegreeSequence, i: int, trials: int, seed=None, threads: int = 1
) -> MonteCarloResult:
    """Sample means of the prefix-partition blocks over independent uniform pairings.

    Each stub is tagged elite or periphery by its owner; a shuffled tag
    sequence read off in consecutive pairs is one pairing.  Trials run in
    chunks of fixed size whose seeds derive from (seed, chunk index), so the
    result does not depend on *threads*.
    """
    if not isinstance(seq, DegreeSequence):
        seq = DegreeSequence(seq)
    if trials < 1:
        raise DomainError("trials must be at least 1")
    if not 1 <= i <= seq.n:
        raise DomainError(f"prefix index must be in 1..{seq.n}, got {i}")
    s_e = int(seq.d[:i].sum())
    flags = np.zeros(2 * seq.m, bool)
    flags[:s_e] = True
    entropy = np.random.SeedSequence(seed).entropy
    sizes = [TRIALS_PER_CHUNK] * (trials // TRIALS_PER_CHUNK)
    if trials % TRIALS_PER_CHUNK:
        sizes.append(trials % TRIALS_PER_CHUNK)
    jobs = [(flags, size, entropy, idx) for idx, size in enumerate(sizes)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda job: _chunk_counts(*job), jobs))
    else:
        parts = [_chunk_counts(*job) for job in jobs]
    samples = np.concatenate(parts, axis=1)
    means = samples.mean(axis=1)
    if trials > 1:
        errs = samples.std(axis=1, ddof=1) / math.sqrt(trials)
    else:
        errs = np.full(3, math.nan)
    return MonteCarloResult(*means.tolist(), *errs.tolist(), trials)
