"""Hot loops.

Every kernel has two routes that must agree exactly:

* a loop route compiled with numba (``*_loop``), and
* a vectorised numpy route (``*_numpy``) that uses a different algorithm where
  one exists, so each route doubles as a cross-check for the other.

The public functions pick a route from :data:`BACKEND`, which defaults to
``"numba"`` when numba is importable and ``POWERSYM_DISABLE_NUMBA`` is unset.
"""
import numpy as np

from ._accel import HAVE_NUMBA, default_backend, njit

BACKEND = default_backend()


def _resolve(backend):
    backend = backend or BACKEND
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        backend = "numpy"
    return backend


# --------------------------------------------------------------------------
# CSR construction
# --------------------------------------------------------------------------


@njit(cache=True)
def build_csr_loop(n, src, dst):
    indptr = np.zeros(n + 1, np.int64)
    for e in range(src.shape[0]):
        indptr[src[e] + 1] += 1
        indptr[dst[e] + 1] += 1
    for v in range(n):
        indptr[v + 1] += indptr[v]
    fill = indptr[:-1].copy()
    indices = np.empty(indptr[n], np.int64)
    for e in range(src.shape[0]):
        a = src[e]
        b = dst[e]
        indices[fill[a]] = b
        fill[a] += 1
        indices[fill[b]] = a
        fill[b] += 1
    return indptr, indices


def build_csr_numpy(n, src, dst):
    heads = np.concatenate([src, dst])
    tails = np.concatenate([dst, src])
    order = np.argsort(heads, kind="stable")
    indptr = np.zeros(n + 1, np.int64)
    np.cumsum(np.bincount(heads, minlength=n), out=indptr[1:])
    return indptr, tails[order].astype(np.int64, copy=False)


def build_csr(n, src, dst, backend=None):
    """Symmetric CSR adjacency of non-loop edges ``src[i]--dst[i]``."""
    src = np.ascontiguousarray(src, dtype=np.int64)
    dst = np.ascontiguousarray(dst, dtype=np.int64)
    if _resolve(backend) == "numba":
        return build_csr_loop(n, src, dst)
    return build_csr_numpy(n, src, dst)


# --------------------------------------------------------------------------
# Shift diagram: blocks of every prefix of an ordering
# --------------------------------------------------------------------------


@njit(cache=True)
def shift_sweep_loop(indptr, indices, loops, order, m_total):
    n = order.shape[0]
    in_elite = np.zeros(n, np.bool_)
    ee = np.zeros(n + 1, np.int64)
    ep = np.zeros(n + 1, np.int64)
    pp = np.zeros(n + 1, np.int64)
    c_ee = 0
    c_ep = 0
    c_pp = m_total
    pp[0] = c_pp
    for k in range(n):
        v = order[k]
        d_e = 0
        for j in range(indptr[v], indptr[v + 1]):
            if in_elite[indices[j]]:
                d_e += 1
        d_p = indptr[v + 1] - indptr[v] - d_e
        c_ee += d_e + loops[v]
        c_pp -= d_p + loops[v]
        c_ep += d_p - d_e
        in_elite[v] = True
        ee[k + 1] = c_ee
        ep[k + 1] = c_ep
        pp[k + 1] = c_pp
    return ee, ep, pp


def shift_sweep_numpy(src, dst, loops, order, m_total):
    # An edge is crossing for prefixes k in (min rank, max rank] and
    # elite-internal from k = max rank + 1 on.
    n = order.shape[0]
    rank = np.empty(n, np.int64)
    rank[order] = np.arange(n, dtype=np.int64)
    ra = rank[src]
    rb = rank[dst]
    lo = np.minimum(ra, rb)
    hi = np.maximum(ra, rb)
    entered = np.zeros(n + 1, np.int64)
    np.cumsum(np.bincount(lo + 1, minlength=n + 1)[: n + 1], out=entered)
    internal = np.zeros(n + 1, np.int64)
    np.cumsum(np.bincount(hi + 1, minlength=n + 1)[: n + 1], out=internal)
    loop_prefix = np.zeros(n + 1, np.int64)
    np.cumsum(loops[order], out=loop_prefix[1:])
    ee = internal + loop_prefix
    ep = entered - internal
    pp = m_total - ee - ep
    return ee, ep, pp


def shift_sweep(graph, order, backend=None):
    """``(i_ee, i_ep, i_pp)`` arrays of length ``n + 1`` for every prefix of *order*."""
    order = np.ascontiguousarray(order, dtype=np.int64)
    loops = graph.loop_counts
    if _resolve(backend) == "numba":
        return shift_sweep_loop(graph.indptr, graph.indices, loops, order, graph.m_total)
    return shift_sweep_numpy(graph.src, graph.dst, loops, order, graph.m_total)


# --------------------------------------------------------------------------
# k-core peeling
# --------------------------------------------------------------------------


@njit(cache=True)
def core_peel_loop(indptr, indices):
    # Batagelj-Zaversnik bucket peeling, multi-edges counted.
    n = indptr.shape[0] - 1
    deg = np.empty(n, np.int64)
    max_deg = 0
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
        if deg[v] > max_deg:
            max_deg = deg[v]
    bin_start = np.zeros(max_deg + 2, np.int64)
    for v in range(n):
        bin_start[deg[v] + 1] += 1
    for d in range(max_deg + 1):
        bin_start[d + 1] += bin_start[d]
    pos = np.empty(n, np.int64)
    vert = np.empty(n, np.int64)
    fill = bin_start.copy()
    for v in range(n):
        pos[v] = fill[deg[v]]
        vert[pos[v]] = v
        fill[deg[v]] += 1
    for i in range(n):
        v = vert[i]
        dv = deg[v]
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            du = deg[u]
            if du > dv:
                pw = bin_start[du]
                w = vert[pw]
                if u != w:
                    pu = pos[u]
                    vert[pu] = w
                    pos[w] = pu
                    vert[pw] = u
                    pos[u] = pw
                bin_start[du] += 1
                deg[u] = du - 1
    return deg


def core_peel_numpy(indptr, indices):
    # Level-synchronous peeling: at level c strip every vertex of residual
    # degree <= c until none is left, then move to the next level.
    n = indptr.shape[0] - 1
    deg = np.diff(indptr).astype(np.int64)
    alive = np.ones(n, bool)
    core = np.zeros(n, np.int64)
    level = 0
    remaining = n
    while remaining:
        level = max(level, int(deg[alive].min()))
        while True:
            strip = np.flatnonzero(alive & (deg <= level))
            if strip.size == 0:
                break
            core[strip] = level
            alive[strip] = False
            remaining -= strip.size
            starts = indptr[strip]
            lens = indptr[strip + 1] - starts
            total = int(lens.sum())
            if total:
                offsets = np.repeat(starts - np.cumsum(lens) + lens, lens)
                nbrs = indices[offsets + np.arange(total)]
                deg -= np.bincount(nbrs, minlength=n)
    return core


def core_peel(graph, backend=None):
    """Coreness of every vertex on the loop-free multigraph skeleton."""
    if graph.n == 0:
        return np.zeros(0, np.int64)
    if _resolve(backend) == "numba":
        return core_peel_loop(graph.indptr, graph.indices)
    return core_peel_numpy(graph.indptr, graph.indices)
