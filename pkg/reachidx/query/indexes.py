"""
Uniform query surface over every index kind

Each adapter answers reach(u, v) on the ids of the DAG it was built on and
reports its entry count for stats.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, runtime_checkable

from reachidx.graph.models import Dag
from reachidx.labeling.models import HopLabeling
from reachidx.oracle.service import TransitiveClosure, reach
from reachidx.query.models import GrailLabels
from reachidx.query.service import query_hop, query_online
from reachidx.treecover.ktree import query_multi
from reachidx.treecover.models import CompressedTC, MultiTreeIndex, TreeCover
from reachidx.treecover.service import query_tree


@runtime_checkable
class ReachIndex(Protocol):
    @property
    def n(self) -> int: ...

    @property
    def entries(self) -> int: ...

    def reach(self, u: int, v: int) -> bool: ...


@dataclass(frozen=True)
class HopIndex:
    labels: HopLabeling

    @property
    def n(self) -> int:
        return self.labels.n

    @property
    def entries(self) -> int:
        return self.labels.total_entries

    def reach(self, u: int, v: int) -> bool:
        return query_hop(self.labels, u, v)


@dataclass(frozen=True)
class TreeIndex:
    tree: TreeCover
    ctc: CompressedTC

    @property
    def n(self) -> int:
        return self.tree.n

    @property
    def entries(self) -> int:
        return self.ctc.total_entries

    def reach(self, u: int, v: int) -> bool:
        return query_tree(self.ctc, self.tree, u, v)


@dataclass(frozen=True)
class MultiTreeReach:
    index: MultiTreeIndex

    @property
    def n(self) -> int:
        return len(self.index.assignment)

    @property
    def entries(self) -> int:
        return self.index.objective

    def reach(self, u: int, v: int) -> bool:
        return query_multi(self.index, u, v)


@dataclass(frozen=True)
class OnlineIndex:
    graph: Dag
    grail: GrailLabels

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def entries(self) -> int:
        return self.grail.c * self.graph.n

    def reach(self, u: int, v: int) -> bool:
        return query_online(self.graph, self.grail, u, v)


@dataclass(frozen=True)
class ClosureIndex:
    tc: TransitiveClosure

    @property
    def n(self) -> int:
        return self.tc.n

    @property
    def entries(self) -> int:
        return self.tc.total_size

    def reach(self, u: int, v: int) -> bool:
        return reach(self.tc, u, v)


@dataclass(frozen=True)
class MappedIndex:
    """Answers in input-graph ids by routing them through the condensation map."""

    index: ReachIndex
    component_of: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.component_of)

    @property
    def entries(self) -> int:
        return self.index.entries

    def reach(self, u: int, v: int) -> bool:
        return self.index.reach(self.component_of[u], self.component_of[v])
