"""
Hop-labeling data models

CRITICAL: label arrays are sorted ascending and duplicate-free; query merges rely on it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from reachidx.graph.models import Dag


def _freeze(rows: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(sorted(set(row))) for row in rows)


@dataclass(frozen=True)
class HopLabeling:
    l_out: tuple[tuple[int, ...], ...]
    l_in: tuple[tuple[int, ...], ...]

    @classmethod
    def from_sets(cls, l_out: Iterable[Iterable[int]], l_in: Iterable[Iterable[int]]) -> HopLabeling:
        return cls(_freeze(l_out), _freeze(l_in))

    @property
    def n(self) -> int:
        return len(self.l_out)

    @property
    def total_entries(self) -> int:
        return sum(map(len, self.l_out)) + sum(map(len, self.l_in))


@dataclass(frozen=True)
class VertexRank:
    order: tuple[int, ...]
    scores: tuple[int, ...]


@dataclass(frozen=True)
class LevelGraph:
    """G_i: `vertices` are the global ids of V_i; `dag` uses their positions as ids."""

    vertices: tuple[int, ...]
    dag: Dag

    def local_of(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}


@dataclass(frozen=True)
class Hierarchy:
    epsilon: int
    levels: tuple[LevelGraph, ...]
    level_of: tuple[int, ...]

    @property
    def h(self) -> int:
        return len(self.levels) - 1

    @property
    def core(self) -> LevelGraph:
        return self.levels[-1]


@dataclass(frozen=True)
class AccessSets:
    """Dominating backbone entry/exit vertices of one vertex at one level (global ids)."""

    vertex: int
    level: int
    out: tuple[int, ...]
    into: tuple[int, ...]
