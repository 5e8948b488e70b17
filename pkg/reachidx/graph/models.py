"""
Graph data models

CRITICAL: a Dag is immutable once built; every index reads the same arrays.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import numpy as np

from reachidx.core.errors import CycleDetected, InputFormatError


@dataclass(frozen=True)
class EdgeList:
    """Parsed edge-list file, before condensation."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    self_loops_dropped: int = 0
    duplicates_dropped: int = 0


def _csr(n: int, keys: np.ndarray, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.lexsort((values, keys))
    counts = np.bincount(keys, minlength=n) if n else np.zeros(0, dtype=np.int64)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return offsets, values[order].astype(np.int64)


def kahn_order(n: int, out_lists: list[list[int]], in_degree: list[int]) -> list[int]:
    """Topological order; ties broken by smallest id."""
    remaining = list(in_degree)
    ready = [v for v in range(n) if remaining[v] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in out_lists[v]:
            remaining[w] -= 1
            if remaining[w] == 0:
                heapq.heappush(ready, w)
    if len(order) != n:
        raise CycleDetected(f"graph has a cycle ({n - len(order)} vertices never became ready)")
    return order


@dataclass(frozen=True, eq=False)
class Dag:
    """Acyclic graph over ids 0..n-1 in CSR form, both directions, sorted neighbors."""

    n: int
    out_offsets: np.ndarray
    out_targets: np.ndarray
    in_offsets: np.ndarray
    in_sources: np.ndarray
    topo: tuple[int, ...] = field(default=())

    @classmethod
    def from_edges(cls, n: int, edges) -> Dag:
        pairs = sorted({(int(u), int(v)) for u, v in edges})
        for u, v in pairs:
            if u == v:
                raise CycleDetected(f"self-loop on vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputFormatError(f"edge ({u}, {v}) outside 0..{n - 1}")
        if pairs:
            arr = np.asarray(pairs, dtype=np.int64)
            tails, heads = arr[:, 0], arr[:, 1]
        else:
            tails = heads = np.zeros(0, dtype=np.int64)
        out_offsets, out_targets = _csr(n, tails, heads)
        in_offsets, in_sources = _csr(n, heads, tails)
        dag = cls(n, out_offsets, out_targets, in_offsets, in_sources)
        order = kahn_order(n, dag.out_lists, [len(p) for p in dag.in_lists])
        object.__setattr__(dag, "topo", tuple(order))
        return dag

    @property
    def m(self) -> int:
        return int(self.out_targets.shape[0])

    @cached_property
    def out_lists(self) -> list[list[int]]:
        return [self.out_targets[self.out_offsets[v]:self.out_offsets[v + 1]].tolist() for v in range(self.n)]

    @cached_property
    def in_lists(self) -> list[list[int]]:
        return [self.in_sources[self.in_offsets[v]:self.in_offsets[v + 1]].tolist() for v in range(self.n)]

    @cached_property
    def topo_rank(self) -> list[int]:
        rank = [0] * self.n
        for i, v in enumerate(self.topo):
            rank[v] = i
        return rank

    def successors(self, v: int) -> list[int]:
        return self.out_lists[v]

    def predecessors(self, v: int) -> list[int]:
        return self.in_lists[v]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.out_lists[u]:
                yield u, v

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dag):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.out_offsets, other.out_offsets)
            and np.array_equal(self.out_targets, other.out_targets)
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class CondensationMap:
    """Input vertex -> DAG vertex, plus the members of every component."""

    component_of: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def is_identity(self) -> bool:
        return all(c == v for v, c in enumerate(self.component_of))
