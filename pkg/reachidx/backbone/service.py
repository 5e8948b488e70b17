"""
Backbone discovery service

Ground set and candidate sets, lazy greedy set cover, degree-product
preselection, backbone edges and a brute-force verifier.
"""
from __future__ import annotations

import heapq
import logging
import math
from typing import Iterable, Optional

from reachidx.backbone.models import Backbone, BackboneMode, BackboneReport, CoverInstance, Pair
from reachidx.core.errors import InvalidParameter, UncoverableElement
from reachidx.graph.models import Dag
from reachidx.graph.service import bfs_distances
from reachidx.oracle.service import TransitiveClosure, compute_tc, reach

logger = logging.getLogger(__name__)


def _check_mode(mode: str) -> None:
    if mode not in ("two_side", "one_side"):
        raise InvalidParameter(f"unknown backbone mode {mode!r}")


def build_cover_instance(graph: Dag, epsilon: int, mode: BackboneMode = "two_side") -> CoverInstance:
    """Pairs at distance exactly ε+1 (two-side) or ε (one-side)."""
    if epsilon < 1:
        raise InvalidParameter(f"epsilon must be >= 1, got {epsilon}")
    _check_mode(mode)
    depth = epsilon + 1 if mode == "two_side" else epsilon
    ground = set()
    for u in range(graph.n):
        for v, d in bfs_distances(graph, u, depth, "out").items():
            if d == depth:
                ground.add((u, v))
    logger.info(f"Cover instance ({mode}, ε={epsilon}): {len(ground)} pairs")
    return CoverInstance(graph, epsilon, mode, frozenset(ground))


def preselect(graph: Dag, alpha: float) -> list[int]:
    """Top ⌈alpha·n⌉ vertices by indeg × outdeg, smallest id on ties."""
    if not 0.0 <= alpha <= 1.0:
        raise InvalidParameter(f"alpha must be in [0, 1], got {alpha}")
    k = math.ceil(round(alpha * graph.n, 9))
    score = [len(graph.in_lists[v]) * len(graph.out_lists[v]) for v in range(graph.n)]
    ranked = sorted(range(graph.n), key=lambda v: (-score[v], v))
    return sorted(ranked[:k])


def greedy_cover(instance: CoverInstance, preselected: Iterable[int] = ()) -> list[int]:
    """Greedy max-coverage with lazily re-evaluated gains; returns preselected ∪ picks, sorted."""
    chosen = sorted(set(preselected))
    for p in chosen:
        instance.covered |= instance.candidate(p)

    remaining = len(instance.ground) - len(instance.covered)
    heap = []
    if remaining:
        taken = set(chosen)
        for x in range(instance.graph.n):
            if x in taken:
                continue
            gain = len(instance.candidate(x) - instance.covered)
            if gain:
                heap.append((-gain, x))
        heapq.heapify(heap)

    picks = []
    while remaining:
        if not heap:
            raise UncoverableElement(f"{remaining} ground pairs have no covering candidate")
        _, x = heapq.heappop(heap)
        fresh = instance.candidate(x) - instance.covered
        if not fresh:
            continue
        if heap and (-len(fresh), x) > heap[0]:
            heapq.heappush(heap, (-len(fresh), x))
            continue
        instance.covered |= fresh
        remaining -= len(fresh)
        picks.append(x)

    logger.info(f"Greedy cover: {len(chosen)} preselected + {len(picks)} picked")
    return sorted(set(chosen) | set(picks))


def backbone_edges(
    graph: Dag,
    vstar: Iterable[int],
    epsilon: int,
    mode: BackboneMode = "two_side",
    prune: bool = False,
) -> list[Pair]:
    """E*: backbone pairs within ε (two-side) or ε+1 (one-side) hops.

    With prune=True an edge (a, b) is dropped when another backbone vertex x has
    d(a, x) ≤ ε and d(x, b) ≤ ε.
    """
    _check_mode(mode)
    members = set(vstar)
    limit = epsilon if mode == "two_side" else epsilon + 1
    edges = []
    near: dict[int, set[int]] = {}
    for a in sorted(members):
        dist = bfs_distances(graph, a, limit, "out")
        near[a] = {x for x, d in dist.items() if x != a and x in members and d <= epsilon}
        edges.extend((a, b) for b in sorted(dist) if b != a and b in members)
    if prune:
        near_in: dict[int, set[int]] = {b: set() for b in members}
        for a, outs in near.items():
            for x in outs:
                near_in[x].add(a)
        edges = [(a, b) for a, b in edges if not (near[a] - {b}) & near_in[b]]
    return edges


def discover_backbone(
    graph: Dag,
    epsilon: int,
    mode: BackboneMode = "two_side",
    alpha: float = 0.0,
    prune: bool = False,
) -> Backbone:
    instance = build_cover_instance(graph, epsilon, mode)
    vstar = greedy_cover(instance, preselect(graph, alpha))
    edges = backbone_edges(graph, vstar, epsilon, mode, prune)
    logger.info(f"Backbone ({mode}, ε={epsilon}): |V*|={len(vstar)} of {graph.n}, |E*|={len(edges)}")
    return Backbone(tuple(vstar), tuple(edges), epsilon, mode)


# ======================
# Verification
# ======================
def verify_backbone(graph: Dag, backbone: Backbone, tc: Optional[TransitiveClosure] = None) -> BackboneReport:
    """Brute-force check of the backbone property against the oracle.

    A witness for (u, v) is an entry u* within ε of u and an exit v* within ε of v
    with u* reaching v* inside the backbone graph.
    """
    tc = compute_tc(graph) if tc is None else tc
    eps = backbone.epsilon
    local = backbone.local_of
    inner = compute_tc(backbone.dag, cap=max(backbone.dag.n, 1))

    exits = [0] * graph.n
    for v in range(graph.n):
        for x in bfs_distances(graph, v, eps, "in"):
            if x in local:
                exits[v] |= 1 << local[x]

    report = BackboneReport()
    for u in range(graph.n):
        near = bfs_distances(graph, u, eps, "out")
        entry_reach = 0
        for x in near:
            if x in local:
                entry_reach |= inner.succ[local[x]]
        for v in range(graph.n):
            if u == v or v in near:
                continue
            report.pairs_checked += 1
            witnessed = bool(entry_reach & exits[v])
            reachable = reach(tc, u, v)
            if reachable and not witnessed:
                report.missing_witness.append((u, v))
            elif witnessed and not reachable:
                report.false_witness.append((u, v))
    if not report.ok:
        logger.warning(
            f"Backbone violations: {len(report.missing_witness)} missing, {len(report.false_witness)} false"
        )
    return report


def verify_one_side_cover(graph: Dag, backbone: Backbone) -> list[Pair]:
    """Distance-ε pairs with no backbone midpoint x (d(u, x) ≤ ε and d(x, v) ≤ ε)."""
    eps = backbone.epsilon
    members = backbone.members
    ball = {x: set(bfs_distances(graph, x, eps, "out")) for x in members}
    uncovered = []
    for u in range(graph.n):
        dist = bfs_distances(graph, u, eps, "out")
        mids = [x for x in dist if x in members]
        for v, d in dist.items():
            if d == eps and not any(v in ball[x] for x in mids):
                uncovered.append((u, v))
    return uncovered
