"""
Transitive-closure oracle

Exact reachability for test-scale graphs: one Python-int bitset of predecessors
per vertex, built in a single topological sweep. Every other index is checked
against this.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional

import numpy as np

from reachidx.core.config import get_settings
from reachidx.core.errors import NoPositivePairs, OracleCapExceeded
from reachidx.graph.models import Dag
from reachidx.graph.service import bfs_distances

logger = logging.getLogger(__name__)


def bit_positions(bits: int) -> np.ndarray:
    """Indices of the set bits of a non-negative int, ascending."""
    if bits == 0:
        return np.zeros(0, dtype=np.int64)
    raw = np.frombuffer(bits.to_bytes((bits.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little"))


@dataclass(frozen=True, eq=False)
class TransitiveClosure:
    """pred[v] has bit u set iff u reaches v (reflexive)."""

    graph: Dag
    pred: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.pred)

    @cached_property
    def total_size(self) -> int:
        return sum(bits.bit_count() for bits in self.pred)

    @cached_property
    def succ(self) -> tuple[int, ...]:
        out = [0] * self.n
        for v in reversed(self.graph.topo):
            bits = 1 << v
            for w in self.graph.out_lists[v]:
                bits |= out[w]
            out[v] = bits
        return tuple(out)

    def pred_count(self, v: int) -> int:
        return self.pred[v].bit_count()


def compute_tc(graph: Dag, cap: Optional[int] = None) -> TransitiveClosure:
    """Reflexive transitive closure; refuses graphs above the oracle cap."""
    cap = get_settings().ORACLE_VERTEX_CAP if cap is None else cap
    if graph.n > cap:
        raise OracleCapExceeded(f"oracle capped at {cap} vertices, graph has {graph.n}")
    pred = [0] * graph.n
    for v in graph.topo:
        bits = 1 << v
        for u in graph.in_lists[v]:
            bits |= pred[u]
        pred[v] = bits
    tc = TransitiveClosure(graph, tuple(pred))
    logger.info(f"Transitive closure over {graph.n} vertices: {tc.total_size} pairs")
    return tc


def reach(tc: TransitiveClosure, u: int, v: int) -> bool:
    return bool((tc.pred[v] >> u) & 1)


def successors(tc: TransitiveClosure, u: int) -> list[int]:
    return bit_positions(tc.succ[u]).tolist()


def positive_pair_count(tc: TransitiveClosure) -> int:
    """Reachable pairs (u, v) with u != v."""
    return tc.total_size - tc.n


# ======================
# Positive-pair sampling
# ======================
def _sample_from_closure(tc: TransitiveClosure, count: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    per_target = np.array([bits.bit_count() - 1 for bits in tc.pred], dtype=np.int64)
    cumulative = np.cumsum(per_target)
    draws = rng.integers(0, int(cumulative[-1]), size=count)
    targets = np.searchsorted(cumulative, draws, side="right")
    cache: dict[int, np.ndarray] = {}
    pairs: list[tuple[int, int]] = []
    for draw, v in zip(draws.tolist(), targets.tolist()):
        if v not in cache:
            positions = bit_positions(tc.pred[v])
            cache[v] = positions[positions != v]
        offset = draw - (int(cumulative[v - 1]) if v else 0)
        pairs.append((int(cache[v][offset]), v))
    return pairs


def _sample_by_bfs(graph: Dag, count: int, rng: np.random.Generator, visit_limit: int) -> list[tuple[int, int]]:
    sources = np.flatnonzero(np.diff(graph.out_offsets) > 0)
    pairs: list[tuple[int, int]] = []
    while len(pairs) < count:
        u = int(sources[rng.integers(0, len(sources))])
        # BFS order is deterministic, so truncating it keeps the draw seeded
        reached = list(bfs_distances(graph, u, None, "out"))[1:visit_limit + 1]
        pairs.append((u, reached[int(rng.integers(0, len(reached)))]))
    return pairs


def sample_positive_pairs(
    graph: Dag,
    count: int,
    seed: int,
    tc: Optional[TransitiveClosure] = None,
) -> list[tuple[int, int]]:
    """Seeded reachable pairs with u != v.

    Uniform over the closure when the graph fits under the oracle cap; above it,
    pairs come from per-source BFS (uniform source, then uniform among the first
    POSITIVE_BFS_LIMIT vertices reached), which is not uniform over pairs.
    """
    settings = get_settings()
    if graph.m == 0:
        raise NoPositivePairs("graph has no edges, so no reachable pair with u != v exists")
    if count <= 0:
        return []
    rng = np.random.default_rng(seed)
    if tc is None and graph.n <= settings.ORACLE_VERTEX_CAP:
        tc = compute_tc(graph)
    if tc is not None:
        return _sample_from_closure(tc, count, rng)
    logger.warning(f"Graph above oracle cap ({graph.n} vertices); sampling positives by BFS")
    return _sample_by_bfs(graph, count, rng, settings.POSITIVE_BFS_LIMIT)


def find_disagreement(
    tc: TransitiveClosure,
    answer: Callable[[int, int], bool],
    pairs: Optional[Iterable[tuple[int, int]]] = None,
) -> Optional[tuple[int, int]]:
    """First pair where `answer` differs from the closure; all n² pairs by default."""
    if pairs is None:
        pairs = ((u, v) for u in range(tc.n) for v in range(tc.n))
    for u, v in pairs:
        if answer(u, v) != reach(tc, u, v):
            return u, v
    return None
