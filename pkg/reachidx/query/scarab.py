"""
Backbone-composed queries

A pair is answered locally when a short bidirectional search meets; otherwise
through the backbone, either by joining the dominating entry/exit sets through
an inner index over E* or by one shared traversal of the backbone graph.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Literal, Optional

from reachidx.backbone.models import Backbone
from reachidx.backbone.service import discover_backbone
from reachidx.graph.models import Dag
from reachidx.graph.service import bfs_distances
from reachidx.labeling.distribution import dl_build
from reachidx.oracle.service import compute_tc
from reachidx.query.indexes import ClosureIndex, HopIndex, ReachIndex, TreeIndex
from reachidx.query.models import GrailLabels
from reachidx.query.service import grail_build
from reachidx.treecover.service import build_tree, compress_tc, exact_weights

logger = logging.getLogger(__name__)

InnerKind = Literal["dl", "tree", "closure"]


@dataclass(frozen=True, eq=False)
class ScarabIndex:
    graph: Dag
    backbone: Backbone
    grail: GrailLabels
    inner: ReachIndex
    access_out: tuple[tuple[int, ...], ...]
    access_in: tuple[tuple[int, ...], ...]
    seed: int = 0
    inner_kind: InnerKind = "dl"

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def entries(self) -> int:
        access = sum(map(len, self.access_out)) + sum(map(len, self.access_in))
        return len(self.backbone.edges) + access + self.inner.entries

    def inner_reach(self, x: int, y: int) -> bool:
        local = self.backbone.local_of
        return self.inner.reach(local[x], local[y])

    def reach(self, u: int, v: int) -> bool:
        return scarab_query(self, u, v)


def build_inner(backbone: Backbone, kind: InnerKind = "dl") -> ReachIndex:
    dag = backbone.dag
    if kind == "dl":
        return HopIndex(dl_build(dag))
    if kind == "tree":
        tree = build_tree(dag, exact_weights(dag))
        return TreeIndex(tree, compress_tc(dag, tree))
    if kind == "closure":
        return ClosureIndex(compute_tc(dag, cap=max(dag.n, 1)))
    raise ValueError(f"unknown inner index kind {kind!r}")


def access_vertices(
    graph: Dag,
    backbone: Backbone,
    reduce: bool = True,
) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """Backbone vertices within ε of each vertex, forward and reverse.

    With reduce=True a member is dropped when another member of the same set lies
    within ε of it on the far side (it is reachable through that member).
    """
    eps = backbone.epsilon
    members = backbone.members
    near_out = {x: {y for y in bfs_distances(graph, x, eps, "out") if y in members and y != x} for x in members}
    near_in: dict[int, set[int]] = {x: set() for x in members}
    for x, ys in near_out.items():
        for y in ys:
            near_in[y].add(x)

    outs, ins = [], []
    for v in range(graph.n):
        m_out = {x for x in bfs_distances(graph, v, eps, "out") if x in members}
        m_in = {x for x in bfs_distances(graph, v, eps, "in") if x in members}
        if reduce:
            m_out = {b for b in m_out if near_in[b].isdisjoint(m_out)}
            m_in = {b for b in m_in if near_out[b].isdisjoint(m_in)}
        outs.append(tuple(sorted(m_out)))
        ins.append(tuple(sorted(m_in)))
    return tuple(outs), tuple(ins)


def build_scarab(
    graph: Dag,
    epsilon: int = 2,
    alpha: float = 0.05,
    c: int = 5,
    seed: int = 0,
    inner: InnerKind = "dl",
    reduce_access: bool = True,
    prune: bool = False,
    backbone: Optional[Backbone] = None,
) -> ScarabIndex:
    if backbone is None:
        backbone = discover_backbone(graph, epsilon, "two_side", alpha, prune)
    grail = grail_build(graph, c, seed)
    access_out, access_in = access_vertices(graph, backbone, reduce_access)
    index = ScarabIndex(graph, backbone, grail, build_inner(backbone, inner), access_out, access_in, seed, inner)
    logger.info(f"Backbone index: |V*|={len(backbone.vertices)}, {index.entries} entries")
    return index


def _local_meet(index: ScarabIndex, u: int, v: int) -> bool:
    eps = index.backbone.epsilon
    members = index.backbone.members
    grail = index.grail
    forward = bfs_distances(
        index.graph, u, math.ceil(eps / 2), "out",
        halt=members.__contains__, admit=lambda x: grail.contains(x, v),
    )
    if v in forward:
        return True
    backward = bfs_distances(
        index.graph, v, eps // 2, "in",
        halt=members.__contains__, admit=lambda y: grail.contains(u, y),
    )
    return not forward.keys().isdisjoint(backward.keys())


def scarab_query(index: ScarabIndex, u: int, v: int) -> bool:
    if u == v:
        return True
    grail = index.grail
    if not grail.contains(u, v):
        return False
    if _local_meet(index, u, v):
        return True
    exits = [y for y in index.access_in[v] if grail.contains(u, y)]
    for x in index.access_out[u]:
        if not grail.contains(x, v):
            continue
        for y in exits:
            if grail.contains(x, y) and index.inner_reach(x, y):
                return True
    return False


def scarab_online_search(index: ScarabIndex, u: int, v: int) -> bool:
    """Flag backbone exits near v, then walk the backbone once from the entries near u."""
    if u == v:
        return True
    graph, grail = index.graph, index.grail
    eps = index.backbone.epsilon
    members = index.backbone.members

    behind = bfs_distances(graph, v, eps, "in", halt=members.__contains__, admit=lambda y: grail.contains(u, y))
    if u in behind:
        return True
    targets = {y for y in behind if y in members}
    if not targets:
        return False

    ahead = bfs_distances(graph, u, eps, "out", halt=members.__contains__, admit=lambda x: grail.contains(x, v))
    local = index.backbone.local_of
    ids = index.backbone.vertices
    successors = index.backbone.dag.out_lists
    seen: set[int] = set()
    for start in (x for x in ahead if x in members):
        if start in seen:
            continue
        seen.add(start)
        stack = [local[start]]
        while stack:
            x = stack.pop()
            if ids[x] in targets:
                return True
            for y in successors[x]:
                if ids[y] not in seen and grail.contains(ids[y], v):
                    seen.add(ids[y])
                    stack.append(y)
    return False
