"""Elite selection: k-rich-clubs and c-cores."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .errors import DomainError
from .graph import Graph
from .influence import Partition, degree_ordering


def rich_club(graph: Graph, k: int) -> Partition:
    """The k highest-degree vertices; ties go to the smaller vertex id."""
    if not 1 <= k <= graph.n:
        raise DomainError(f"rich-club size must be in 1..{graph.n}, got {k}")
    return Partition.from_elite(graph, degree_ordering(graph)[:k])


@dataclass(frozen=True, eq=False)
class CoreDecomposition:
    coreness: np.ndarray

    @property
    def max_coreness(self) -> int:
        return int(self.coreness.max(initial=0))

    @cached_property
    def size_by_threshold(self) -> dict[int, int]:
        """c -> |{v : coreness(v) >= c}| for c = 0..max_coreness."""
        counts = np.bincount(self.coreness, minlength=self.max_coreness + 1)
        at_least = np.cumsum(counts[::-1])[::-1]
        return {c: int(at_least[c]) for c in range(self.max_coreness + 1)}

    def ordering(self, degree=None) -> np.ndarray:
        """Vertices by descending coreness (then descending *degree*, then id).

        Every c-core is a prefix of this ordering.
        """
        n = self.coreness.size
        keys = [np.arange(n)]
        if degree is not None:
            keys.append(-np.asarray(degree))
        keys.append(-self.coreness)
        return np.lexsort(keys).astype(np.int64)


def core_decomposition(graph: Graph, backend=None) -> CoreDecomposition:
    """Classic k-core peeling on the loop-free skeleton (parallel edges counted)."""
    core = kernels.core_peel(graph, backend=backend)
    core.flags.writeable = False
    return CoreDecomposition(core)


def c_core_elite(graph: Graph, decomposition: CoreDecomposition, c: int) -> Partition:
    top = decomposition.max_coreness
    if not 1 <= c <= top:
        raise DomainError(f"core threshold must be in 1..{top}, got {c}")
    return Partition.from_elite(graph, decomposition.coreness >= c)


def read_elite_file(graph: Graph, stream) -> Partition:
    """One original vertex label per line; blank and '#' lines ignored."""
    index = {label: i for i, label in enumerate(graph.labels)}
    members = []
    for lineno, line in enumerate(stream, start=1):
        label = line.strip()
        if not label or label.startswith("#"):
            continue
        if label not in index:
            raise DomainError(f"elite file line {lineno}: unknown vertex {label!r}")
        members.append(index[label])
    return Partition.from_elite(graph, members)


def write_elite_file(graph: Graph, partition: Partition, out) -> None:
    for v in partition.elite.tolist():
        out.write(f"{graph.labels[v]}\n")
