"""
Distribution labeling

Vertices are taken in rank order and each one is pushed as a hop through a
pruned reverse BFS (into L_out) and a pruned forward BFS (into L_in). A visit
whose pair is already witnessed by an earlier hop is pruned together with
everything behind it.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from reachidx.graph.models import Dag
from reachidx.labeling.models import HopLabeling, VertexRank
from reachidx.oracle.service import TransitiveClosure, compute_tc, reach

logger = logging.getLogger(__name__)


def rank_vertices(graph: Dag) -> VertexRank:
    scores = tuple((len(graph.out_lists[v]) + 1) * (len(graph.in_lists[v]) + 1) for v in range(graph.n))
    order = tuple(sorted(range(graph.n), key=lambda v: (-scores[v], v)))
    return VertexRank(order, scores)


def _distribute(
    adjacency: list[list[int]],
    hop: int,
    hop_side: set[int],
    labels: list[list[int]],
) -> None:
    """BFS from `hop`; each visited w gets `hop` unless labels[w] already meets hop_side."""
    seen = {hop}
    queue = deque([hop])
    while queue:
        w = queue.popleft()
        if w != hop and not hop_side.isdisjoint(labels[w]):
            continue
        labels[w].append(hop)
        for x in adjacency[w]:
            if x not in seen:
                seen.add(x)
                queue.append(x)


def dl_build(graph: Dag, rank: Optional[VertexRank] = None) -> HopLabeling:
    rank = rank_vertices(graph) if rank is None else rank
    l_out: list[list[int]] = [[] for _ in range(graph.n)]
    l_in: list[list[int]] = [[] for _ in range(graph.n)]
    for hop in rank.order:
        # snapshot before this hop's own insertions
        hop_in = set(l_in[hop])
        hop_out = set(l_out[hop])
        _distribute(graph.in_lists, hop, hop_in, l_out)
        _distribute(graph.out_lists, hop, hop_out, l_in)
    labels = HopLabeling.from_sets(l_out, l_in)
    logger.info(f"Distribution labels over {graph.n} vertices: {labels.total_entries} entries")
    return labels


@dataclass
class RedundancyReport:
    """Hops that can be deleted without losing any reachable pair."""

    removable: list[tuple[str, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.removable


def _needed(hop: int, own: set[int], holders: list[int], side_of, tc_check) -> bool:
    rest = own - {hop}
    return any(rest.isdisjoint(side_of(w)) and tc_check(w) for w in holders)


def check_non_redundancy(graph: Dag, labels: HopLabeling, tc: Optional[TransitiveClosure] = None) -> RedundancyReport:
    """Every hop must be the only witness of at least one reachable pair."""
    tc = compute_tc(graph) if tc is None else tc
    holders_in: dict[int, list[int]] = {}
    holders_out: dict[int, list[int]] = {}
    for v in range(labels.n):
        for h in labels.l_in[v]:
            holders_in.setdefault(h, []).append(v)
        for h in labels.l_out[v]:
            holders_out.setdefault(h, []).append(v)

    report = RedundancyReport()
    for x in range(labels.n):
        own = set(labels.l_out[x])
        for h in labels.l_out[x]:
            if not _needed(h, own, holders_in.get(h, []), lambda v: labels.l_in[v], lambda v: reach(tc, x, v)):
                report.removable.append(("out", x, h))
        own = set(labels.l_in[x])
        for h in labels.l_in[x]:
            if not _needed(h, own, holders_out.get(h, []), lambda u: labels.l_out[u], lambda u: reach(tc, u, x)):
                report.removable.append(("in", x, h))
    if report.removable:
        logger.warning(f"{len(report.removable)} redundant hop(s) found")
    return report
