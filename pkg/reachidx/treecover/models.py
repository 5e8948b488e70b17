"""
Tree-cover data models

CRITICAL: the weight of a candidate tree edge (p, v) depends only on its tail p,
so every weight table is stored as one count per vertex.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np

ROOT = -1


@dataclass(frozen=True, eq=False)
class WeightTable:
    """pred_counts[p] = |pred(p)| (or |pred(p) ∩ group| for conditional tables)."""

    pred_counts: np.ndarray

    def weight(self, tail: int, head: int) -> int:
        return 0 if tail == ROOT else int(self.pred_counts[tail])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightTable):
            return NotImplemented
        return np.array_equal(self.pred_counts, other.pred_counts)

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class TreeCover:
    """Spanning tree of a DAG under a virtual root (parent -1).

    interval[v] = (pre, post): 1-based preorder number of v and the largest
    preorder number in its subtree.
    """

    parent: tuple[int, ...]
    interval: tuple[tuple[int, int], ...]
    weight: int

    @property
    def n(self) -> int:
        return len(self.parent)

    def is_ancestor(self, u: int, v: int) -> bool:
        a, b = self.interval[u]
        return a <= self.interval[v][0] <= b


@dataclass(frozen=True)
class CompressedTC:
    """Per-vertex sorted, disjoint tree intervals covering succ(u)."""

    lists: tuple[tuple[tuple[int, int], ...], ...]
    starts: tuple[tuple[int, ...], ...] = field(repr=False, compare=False, default=())

    @classmethod
    def from_lists(cls, lists) -> CompressedTC:
        frozen = tuple(tuple((int(a), int(b)) for a, b in row) for row in lists)
        return cls(frozen, tuple(tuple(a for a, _ in row) for row in frozen))

    @property
    def total_entries(self) -> int:
        return sum(len(row) for row in self.lists)

    def covers(self, u: int, pre: int) -> bool:
        i = bisect_right(self.starts[u], pre) - 1
        return i >= 0 and self.lists[u][i][1] >= pre


@dataclass(frozen=True)
class GroupPartition:
    groups: tuple[tuple[int, ...], ...]
    group_of: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.groups)


@dataclass(frozen=True, eq=False)
class SampleEstimate:
    """What the sampled build saw when it stopped."""

    n_sampled: int
    n_total: int
    partial_counts: np.ndarray
    what: float
    eps1: float
    delta1: float
    theta: float
    groups_used: int
    stopped_early: bool

    @property
    def sample_fraction(self) -> float:
        return self.n_sampled / self.n_total if self.n_total else 1.0


@dataclass(frozen=True)
class MultiTreeIndex:
    trees: tuple[TreeCover, ...]
    ctcs: tuple[CompressedTC, ...]
    assignment: tuple[int, ...]
    objective: int
    history: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.trees)
