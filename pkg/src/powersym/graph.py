"""Undirected multigraphs with a configurable self-loop convention.

Two conventions are supported:

``implicit``
    every vertex carries exactly one self-loop that is never written to disk.
    Explicit loops in the input are rejected since they would double-count.
``none``
    only loops present in the input exist.

A loop adds 1 to the degree of its vertex and 1 to ``m_total``.
"""
from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, TextIO

import numpy as np

from . import kernels
from .errors import DomainError, GraphFormatError

SELF_LOOP_MODES = ("implicit", "none")


class Graph:
    """Immutable multigraph on vertices ``0..n-1``.

    Non-loop edges are stored as parallel ``src``/``dst`` arrays; loops are kept
    as a per-vertex count.  The CSR adjacency is built lazily.
    """

    def __init__(self, n, src=(), dst=(), self_loop_mode="implicit", labels=None):
        if self_loop_mode not in SELF_LOOP_MODES:
            raise ValueError(f"self_loop_mode must be one of {SELF_LOOP_MODES}, got {self_loop_mode!r}")
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        src = np.asarray(src, dtype=np.int64).ravel()
        dst = np.asarray(dst, dtype=np.int64).ravel()
        if src.shape != dst.shape:
            raise ValueError("src and dst must have the same length")
        if src.size and (min(src.min(), dst.min()) < 0 or max(src.max(), dst.max()) >= n):
            raise ValueError("edge endpoint out of range")
        is_loop = src == dst
        explicit = np.bincount(src[is_loop], minlength=n).astype(np.int64)
        if self_loop_mode == "implicit" and explicit.any():
            v = int(np.flatnonzero(explicit)[0])
            raise GraphFormatError(
                f"explicit self-loop at vertex {v} not allowed in implicit self-loop mode"
            )
        keep = ~is_loop
        self.n = n
        self.self_loop_mode = self_loop_mode
        self.src = np.ascontiguousarray(src[keep])
        self.dst = np.ascontiguousarray(dst[keep])
        self.explicit_loops = explicit
        if labels is None:
            labels = [str(i) for i in range(n)]
        elif len(labels) != n:
            raise ValueError("labels must have one entry per vertex")
        self.labels = list(labels)
        for arr in (self.src, self.dst, self.explicit_loops):
            arr.flags.writeable = False

    def __repr__(self):
        return (
            f"Graph(n={self.n}, m_nonloop={self.m_nonloop}, m_total={self.m_total}, "
            f"self_loop_mode={self.self_loop_mode!r})"
        )

    @classmethod
    def from_edges(cls, n, edges: Iterable[tuple[int, int]], self_loop_mode="implicit", labels=None):
        arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        return cls(n, arr[:, 0], arr[:, 1], self_loop_mode=self_loop_mode, labels=labels)

    # -- counts -------------------------------------------------------------

    @property
    def m_nonloop(self) -> int:
        return int(self.src.size)

    @cached_property
    def loop_counts(self) -> np.ndarray:
        if self.self_loop_mode == "implicit":
            loops = np.ones(self.n, np.int64)
        else:
            loops = self.explicit_loops.copy()
        loops.flags.writeable = False
        return loops

    @property
    def m_loop(self) -> int:
        return int(self.loop_counts.sum())

    @property
    def m_total(self) -> int:
        return self.m_nonloop + self.m_loop

    @property
    def m_raw(self) -> int:
        """Edges as they appear in the input: non-loop edges plus explicit loops."""
        return self.m_nonloop + int(self.explicit_loops.sum())

    @cached_property
    def nonloop_degree(self) -> np.ndarray:
        deg = (np.bincount(self.src, minlength=self.n) + np.bincount(self.dst, minlength=self.n)).astype(np.int64)
        deg.flags.writeable = False
        return deg

    @cached_property
    def degree(self) -> np.ndarray:
        """d_V(v): incident non-loop edges plus one per self-loop."""
        deg = self.nonloop_degree + self.loop_counts
        deg.flags.writeable = False
        return deg

    @property
    def stub_degree(self) -> np.ndarray:
        """Configuration-model degree: a loop occupies two stubs."""
        return self.nonloop_degree + 2 * self.explicit_loops

    # -- adjacency ----------------------------------------------------------

    @cached_property
    def _csr(self):
        indptr, indices = kernels.build_csr(self.n, self.src, self.dst)
        indptr.flags.writeable = False
        indices.flags.writeable = False
        return indptr, indices

    @property
    def indptr(self) -> np.ndarray:
        return self._csr[0]

    @property
    def indices(self) -> np.ndarray:
        return self._csr[1]

    def neighbors(self, v) -> np.ndarray:
        """Non-loop neighbour multiset of *v* (parallel edges repeat)."""
        v = self._check_vertex(v)
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def raw_edges(self) -> np.ndarray:
        """``(m_raw, 2)`` array of input edges, explicit loops last."""
        loop_v = np.repeat(np.arange(self.n, dtype=np.int64), self.explicit_loops)
        return np.concatenate(
            [np.column_stack([self.src, self.dst]), np.column_stack([loop_v, loop_v])]
        )

    def _check_vertex(self, v) -> int:
        v = int(v)
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for graph with {self.n} vertices")
        return v

    # -- derived graphs -----------------------------------------------------

    def with_mode(self, self_loop_mode) -> "Graph":
        """Same edges under another loop convention (explicit loops must be absent for implicit)."""
        edges = self.raw_edges()
        return Graph(self.n, edges[:, 0], edges[:, 1], self_loop_mode=self_loop_mode, labels=self.labels)

    def simplified(self, self_loop_mode=None) -> "Graph":
        """Drop explicit loops and collapse parallel edges."""
        lo = np.minimum(self.src, self.dst)
        hi = np.maximum(self.src, self.dst)
        pairs = np.unique(np.column_stack([lo, hi]), axis=0) if lo.size else np.zeros((0, 2), np.int64)
        return Graph(
            self.n, pairs[:, 0], pairs[:, 1],
            self_loop_mode=self_loop_mode or self.self_loop_mode, labels=self.labels,
        )


# --------------------------------------------------------------------------
# vertex sets
# --------------------------------------------------------------------------


def vertex_mask(graph: Graph, vertices) -> np.ndarray:
    """Boolean membership mask for a vertex set given as ids or as a mask."""
    if isinstance(vertices, (set, frozenset)):
        vertices = sorted(vertices)
    elif not isinstance(vertices, (np.ndarray, list, tuple)):
        vertices = list(vertices)
    arr = np.asarray(vertices)
    if arr.dtype == bool:
        if arr.shape != (graph.n,):
            raise ValueError("boolean vertex mask must have length n")
        return arr
    if arr.size == 0:
        return np.zeros(graph.n, bool)
    arr = arr.astype(np.int64).ravel()
    if arr.min() < 0 or arr.max() >= graph.n:
        bad = int(arr[(arr < 0) | (arr >= graph.n)][0])
        raise IndexError(f"vertex {bad} out of range for graph with {graph.n} vertices")
    mask = np.zeros(graph.n, bool)
    mask[arr] = True
    return mask


def degree_wrt(graph: Graph, v, X) -> int:
    """d_X(v): edges from *v* into *X*, counting v's loops iff v is in X."""
    v = graph._check_vertex(v)
    mask = vertex_mask(graph, X)
    count = int(mask[graph.neighbors(v)].sum())
    if mask[v]:
        count += int(graph.loop_counts[v])
    return count


# --------------------------------------------------------------------------
# edge-list text format
# --------------------------------------------------------------------------


@dataclass
class TimestampedEdgeList:
    """Edges ``u[i]--v[i]`` created at integer ``time[i]``."""

    u: np.ndarray
    v: np.ndarray
    time: np.ndarray
    labels: list = field(default_factory=list)
    sorted_by_time: bool = False

    def __post_init__(self):
        self.u = np.asarray(self.u, dtype=np.int64)
        self.v = np.asarray(self.v, dtype=np.int64)
        self.time = np.asarray(self.time, dtype=np.int64)
        if not (self.u.shape == self.v.shape == self.time.shape):
            raise ValueError("u, v and time must have equal length")
        if self.time.size and self.time.min() < 0:
            raise ValueError("negative timestamp")
        if not self.labels:
            n = int(max(self.u.max(initial=-1), self.v.max(initial=-1))) + 1
            self.labels = [str(i) for i in range(n)]

    def __len__(self):
        return int(self.u.size)

    @property
    def n(self) -> int:
        return len(self.labels)

    def normalized(self) -> "TimestampedEdgeList":
        if self.sorted_by_time:
            return self
        order = np.argsort(self.time, kind="stable")
        return TimestampedEdgeList(self.u[order], self.v[order], self.time[order], self.labels, True)


def _tokens(stream: TextIO):
    for lineno, line in enumerate(stream, start=1):
        stripped = line.strip()
        if not stripped or stripped[0] in "#%":
            continue
        yield lineno, stripped.split()


def ingest_edge_list(
    source,
    self_loop_mode="implicit",
    dedup=False,
    has_timestamps=False,
):
    """Parse whitespace-separated edge-list text.

    ``source`` is the text itself (``str``), a path (``os.PathLike``) or an
    open text stream.  Lines are ``u v`` or ``u v t``; ``#`` and ``%`` start
    comment lines; a line with a single field declares an isolated vertex.
    Labels are mapped to dense ids in order of first appearance.

    Returns a :class:`Graph`, or a :class:`TimestampedEdgeList` when
    *has_timestamps* is set.
    """
    if isinstance(source, str):
        stream = io.StringIO(source)
    elif isinstance(source, os.PathLike):
        with open(source, encoding="utf-8") as fh:
            return ingest_edge_list(fh, self_loop_mode, dedup, has_timestamps)
    else:
        stream = source
    if self_loop_mode not in SELF_LOOP_MODES:
        raise ValueError(f"self_loop_mode must be one of {SELF_LOOP_MODES}")

    ids: dict[str, int] = {}
    us: list[int] = []
    vs: list[int] = []
    ts: list[int] = []
    for lineno, fields in _tokens(stream):
        if len(fields) == 1:
            if has_timestamps:
                raise GraphFormatError("expected 'u v t'", lineno)
            ids.setdefault(fields[0], len(ids))
            continue
        if has_timestamps:
            if len(fields) < 3:
                raise GraphFormatError("expected 'u v t'", lineno)
            try:
                t = int(fields[2])
            except ValueError:
                raise GraphFormatError(f"timestamp {fields[2]!r} is not an integer", lineno) from None
            if t < 0:
                raise GraphFormatError(f"negative timestamp {t}", lineno)
            ts.append(t)
        a = ids.setdefault(fields[0], len(ids))
        b = ids.setdefault(fields[1], len(ids))
        if a == b and self_loop_mode == "implicit":
            raise GraphFormatError(
                f"explicit self-loop on {fields[0]!r} not allowed in implicit self-loop mode"
                " (read it with self-loop mode none)",
                lineno,
            )
        us.append(a)
        vs.append(b)
    if not ids:
        raise DomainError("empty graph")
    labels = list(ids)
    if has_timestamps:
        return TimestampedEdgeList(np.array(us, np.int64), np.array(vs, np.int64), np.array(ts, np.int64), labels)
    src = np.array(us, np.int64)
    dst = np.array(vs, np.int64)
    if dedup and src.size:
        lo, hi = np.minimum(src, dst), np.maximum(src, dst)
        _, first = np.unique(np.column_stack([lo, hi]), axis=0, return_index=True)
        first.sort()
        src, dst = src[first], dst[first]
    return Graph(len(labels), src, dst, self_loop_mode=self_loop_mode, labels=labels)


def write_edge_list(graph: Graph, out: TextIO, header: Iterable[str] = ()) -> None:
    """Write *graph* in the edge-list format understood by :func:`ingest_edge_list`."""
    for line in header:
        out.write(f"# {line}\n")
    labels = graph.labels
    seen = np.zeros(graph.n, bool)
    for a, b in graph.raw_edges().tolist():
        seen[a] = seen[b] = True
        out.write(f"{labels[a]} {labels[b]}\n")
    for v in np.flatnonzero(~seen).tolist():
        out.write(f"{labels[v]}\n")


def write_timestamped(edges: TimestampedEdgeList, out: TextIO, header: Iterable[str] = ()) -> None:
    for line in header:
        out.write(f"# {line}\n")
    labels = edges.labels
    for a, b, t in zip(edges.u.tolist(), edges.v.tolist(), edges.time.tolist()):
        out.write(f"{labels[a]} {labels[b]} {t}\n")


def edge_list_text(graph: Graph) -> str:
    buf = io.StringIO()
    write_edge_list(graph, buf)
    return buf.getvalue()

