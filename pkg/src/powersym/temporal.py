"""Elite fraction at the symmetry point over growth frames of a timestamped network."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .errors import DomainError
from .graph import Graph, TimestampedEdgeList
from .influence import shift_diagram

FRAME_COINCIDES = "coincides-with-previous"
FRAME_TOO_SMALL = "skipped-n<2"


@dataclass
class Frame:
    t_index: int
    cutoff_time: int
    n: int
    edge_count: int
    target_n: int
    m: Optional[int] = None
    k_sp: Optional[int] = None
    r: Optional[float] = None
    sqrt_m_over_n: Optional[float] = None
    flags: list = field(default_factory=list)


@dataclass
class FrameSeries:
    frames: list
    edges: TimestampedEdgeList
    method: Optional[str] = None

    @property
    def frame_count(self) -> int:
        return len(self.frames)

    def column(self, name) -> np.ndarray:
        return np.array([getattr(f, name) for f in self.frames], dtype=float)


def vertex_births(edges: TimestampedEdgeList) -> np.ndarray:
    """Time of the first incident edge of every vertex (-1 if it has none)."""
    births = np.full(edges.n, np.iinfo(np.int64).max, np.int64)
    np.minimum.at(births, edges.u, edges.time)
    np.minimum.at(births, edges.v, edges.time)
    births[births == np.iinfo(np.int64).max] = -1
    return births


def build_frames(edges: TimestampedEdgeList, frame_count: int = 20) -> FrameSeries:
    """Cut the history into frames at every 1/frame_count of the final vertex count.

    Frame t ends at the earliest time by which at least
    ceil(t * n_final / frame_count) vertices have appeared; the snapshot holds
    every edge stamped at or before that time, so ties can overshoot the target.
    """
    if frame_count < 1:
        raise DomainError("frame_count must be positive")
    if edges.time is None or len(edges) == 0:
        raise DomainError("temporal analysis needs timestamped edges")
    edges = edges.normalized()
    births = vertex_births(edges)
    births = np.sort(births[births >= 0])
    n_final = births.size
    frames = []
    for t in range(1, frame_count + 1):
        target = -(-t * n_final // frame_count)
        cutoff = int(births[target - 1])
        n_t = int(np.searchsorted(births, cutoff, side="right"))
        m_t = int(np.searchsorted(edges.time, cutoff, side="right"))
        frame = Frame(t_index=t, cutoff_time=cutoff, n=n_t, edge_count=m_t, target_n=target)
        if frames and frames[-1].cutoff_time == cutoff:
            frame.flags.append(FRAME_COINCIDES)
        frames.append(frame)
    return FrameSeries(frames, edges)


def snapshot(edges: TimestampedEdgeList, edge_count: int, self_loop_mode="implicit") -> Graph:
    """Graph on the first *edge_count* time-sorted edges, vertices relabelled densely."""
    u = edges.u[:edge_count]
    v = edges.v[:edge_count]
    present, inv = np.unique(np.concatenate([u, v]), return_inverse=True)
    return Graph(
        present.size, inv[:edge_count], inv[edge_count:], self_loop_mode=self_loop_mode,
        labels=[edges.labels[i] for i in present],
    )


def frame_symmetry_point(graph: Graph, method: str) -> int:
    if method == "rich":
        return shift_diagram(graph).k_sp
    if method == "core":
        from .axioms import sweep_ratios

        table = sweep_ratios(graph, method="core")
        return int(table.k[table.is_sp][0])
    raise ValueError(f"unknown method {method!r}")


def elite_fraction_series(
    series: FrameSeries,
    method: str = "rich",
    self_loop_mode: str = "implicit",
    threads: int = 1,
) -> FrameSeries:
    """Fill k_sp, r = k_sp / n and sqrt(m) / n for every frame.

    Symmetry points are recomputed on each snapshot; ``m`` is the snapshot's
    ``m_total`` under *self_loop_mode*.
    """
    def measure(frame: Frame) -> Frame:
        frame = replace(frame, flags=list(frame.flags))
        if frame.n < 2:
            frame.flags.append(FRAME_TOO_SMALL)
            return frame
        graph = snapshot(series.edges, frame.edge_count, self_loop_mode)
        frame.m = graph.m_total
        frame.k_sp = frame_symmetry_point(graph, method)
        frame.r = frame.k_sp / graph.n
        frame.sqrt_m_over_n = math.sqrt(graph.m_total) / graph.n
        return frame

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            frames = list(pool.map(measure, series.frames))
    else:
        frames = [measure(f) for f in series.frames]
    return FrameSeries(frames, series.edges, method)
