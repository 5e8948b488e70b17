"""
Query-engine data models
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

WorkloadKind = Literal["equal", "random"]


@dataclass(frozen=True)
class GrailLabels:
    """labels[v][i] = (low, post) of v in traversal i."""

    c: int
    labels: tuple[tuple[tuple[int, int], ...], ...]

    def contains(self, u: int, v: int) -> bool:
        """True when every traversal nests v's interval inside u's (u may reach v)."""
        for (lu, pu), (lv, pv) in zip(self.labels[u], self.labels[v]):
            if lv < lu or pv > pu:
                return False
        return True


@dataclass(frozen=True)
class QueryWorkload:
    pairs: tuple[tuple[int, int], ...]
    kind: WorkloadKind
    seed: int
    positives: int = 0


class QueryStats(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    build_ms: float = Field(default=0.0, ge=0)
    index_entries: int = Field(default=0, ge=0)
    index_bytes: int = Field(default=0, ge=0)
    query_ns_total: int = Field(default=0, ge=0)
    positives_answered: int = Field(default=0, ge=0)
