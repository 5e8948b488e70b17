"""
Backbone data models
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

from reachidx.graph.models import Dag
from reachidx.graph.service import bfs_distances

BackboneMode = Literal["two_side", "one_side"]

Pair = tuple[int, int]


@dataclass(eq=False)
class CoverInstance:
    """Set-cover instance over vertex pairs.

    Candidate sets are computed on demand from two ε-bounded BFS passes; `covered`
    is the running set R.
    """

    graph: Dag
    epsilon: int
    mode: BackboneMode
    ground: frozenset[Pair]
    covered: set[Pair] = field(default_factory=set)

    def candidate(self, x: int) -> set[Pair]:
        ins = bfs_distances(self.graph, x, self.epsilon, "in")
        outs = bfs_distances(self.graph, x, self.epsilon, "out")
        ground = self.ground
        return {(u, v) for u in ins for v in outs if (u, v) in ground}

    @property
    def candidates(self) -> dict[int, set[Pair]]:
        return {x: self.candidate(x) for x in range(self.graph.n)}

    @property
    def uncovered(self) -> frozenset[Pair]:
        return self.ground - self.covered


@dataclass(frozen=True)
class Backbone:
    vertices: tuple[int, ...]
    edges: tuple[Pair, ...]
    epsilon: int
    mode: BackboneMode

    @cached_property
    def members(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @cached_property
    def local_of(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def dag(self) -> Dag:
        """E* over local ids 0..|V*|-1 (position in `vertices`)."""
        local = self.local_of
        return Dag.from_edges(len(self.vertices), [(local[a], local[b]) for a, b in self.edges])


@dataclass
class BackboneReport:
    """Pairs that break the backbone property, with the rule each one breaks."""

    missing_witness: list[Pair] = field(default_factory=list)
    false_witness: list[Pair] = field(default_factory=list)
    pairs_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.missing_witness and not self.false_witness
