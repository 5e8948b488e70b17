"""
Hierarchical labeling

The DAG is peeled into levels G_0 ⊃ G_1 ⊃ ... ⊃ G_h, each a one-side backbone of
the one below. The core G_h is labeled directly; every other vertex is labeled at
its own level with its ⌈ε/2⌉-neighborhood plus the labels of its dominating
backbone entries (out) or exits (in).
"""
from __future__ import annotations

import logging
import math
from typing import Literal

from reachidx.backbone.service import backbone_edges, build_cover_instance, greedy_cover
from reachidx.core.errors import InvalidParameter
from reachidx.graph.models import Dag
from reachidx.graph.service import bfs_distances
from reachidx.labeling.models import AccessSets, Hierarchy, HopLabeling, LevelGraph

logger = logging.getLogger(__name__)


def decompose(graph: Dag, epsilon: int = 2, max_levels: int = 10, core_limit: int = 10000) -> Hierarchy:
    if epsilon < 1:
        raise InvalidParameter(f"epsilon must be >= 1, got {epsilon}")
    levels = [LevelGraph(tuple(range(graph.n)), graph)]
    while True:
        current = levels[-1]
        size = len(current.vertices)
        if size <= core_limit or len(levels) - 1 >= max_levels:
            break
        instance = build_cover_instance(current.dag, epsilon, "one_side")
        if not instance.ground:
            break
        chosen = greedy_cover(instance)
        if len(chosen) >= size:
            break
        position = {x: j for j, x in enumerate(chosen)}
        edges = backbone_edges(current.dag, chosen, epsilon, "one_side")
        dag = Dag.from_edges(len(chosen), [(position[a], position[b]) for a, b in edges])
        levels.append(LevelGraph(tuple(current.vertices[x] for x in chosen), dag))
        logger.info(f"Level {len(levels) - 1}: {len(chosen)} of {size} vertices, {dag.m} edges")

    level_of = [0] * graph.n
    for i, level in enumerate(levels):
        for v in level.vertices:
            level_of[v] = i
    return Hierarchy(epsilon, tuple(levels), tuple(level_of))


def _dominating(
    dag: Dag,
    source: int,
    members: set[int],
    epsilon: int,
    direction: Literal["out", "in"],
    balls: dict[tuple[int, str], set[int]],
) -> list[int]:
    """Members within ε of `source` that no other such member reaches within ε (local ids)."""
    found = [x for x in bfs_distances(dag, source, epsilon, direction) if x in members and x != source]
    kept = []
    for b in found:
        dominated = False
        for x in found:
            if x == b:
                continue
            key = (x, direction)
            if key not in balls:
                balls[key] = set(bfs_distances(dag, x, epsilon, direction))
            if b in balls[key]:
                dominated = True
                break
        if not dominated:
            kept.append(b)
    return kept


def access_sets(hierarchy: Hierarchy, level: int, v: int) -> AccessSets:
    if not 0 <= level < hierarchy.h:
        raise InvalidParameter(f"level must be in [0, {hierarchy.h}), got {level}")
    if hierarchy.level_of[v] != level:
        raise InvalidParameter(f"vertex {v} lives at level {hierarchy.level_of[v]}, not {level}")
    graph_i = hierarchy.levels[level]
    local = graph_i.local_of()
    members = {local[x] for x in hierarchy.levels[level + 1].vertices}
    balls: dict[tuple[int, str], set[int]] = {}
    out = _dominating(graph_i.dag, local[v], members, hierarchy.epsilon, "out", balls)
    into = _dominating(graph_i.dag, local[v], members, hierarchy.epsilon, "in", balls)
    return AccessSets(
        v,
        level,
        tuple(sorted(graph_i.vertices[x] for x in out)),
        tuple(sorted(graph_i.vertices[x] for x in into)),
    )


def label_core(hierarchy: Hierarchy) -> tuple[dict[int, set[int]], dict[int, set[int]]]:
    """Labels for the core vertices (global ids).

    Neighborhood labels when the core diameter is at most ε, otherwise each core
    vertex lists every core vertex it reaches and L_in(v) = {v}.
    """
    core = hierarchy.core
    eps = hierarchy.epsilon
    dag = core.dag
    ids = core.vertices
    radius = math.ceil(eps / 2)

    within = all(
        max(bfs_distances(dag, x, eps + 1, "out").values()) <= eps for x in range(dag.n)
    )
    l_out: dict[int, set[int]] = {}
    l_in: dict[int, set[int]] = {}
    if within:
        for x in range(dag.n):
            l_out[ids[x]] = {ids[y] for y in bfs_distances(dag, x, radius, "out")}
            l_in[ids[x]] = {ids[y] for y in bfs_distances(dag, x, radius, "in")}
    else:
        logger.info(f"Core of {dag.n} vertices exceeds diameter {eps}; labeling by closure")
        for x in range(dag.n):
            l_out[ids[x]] = {ids[y] for y in bfs_distances(dag, x, None, "out")}
            l_in[ids[x]] = {ids[x]}
    return l_out, l_in


def hl_build(graph: Dag, epsilon: int = 2, max_levels: int = 10, core_limit: int = 10000) -> HopLabeling:
    hierarchy = decompose(graph, epsilon, max_levels, core_limit)
    radius = math.ceil(epsilon / 2)
    l_out: list[set[int]] = [set() for _ in range(graph.n)]
    l_in: list[set[int]] = [set() for _ in range(graph.n)]

    core_out, core_in = label_core(hierarchy)
    for v, hops in core_out.items():
        l_out[v] = hops
    for v, hops in core_in.items():
        l_in[v] = hops

    for level in range(hierarchy.h - 1, -1, -1):
        graph_i = hierarchy.levels[level]
        dag = graph_i.dag
        ids = graph_i.vertices
        local = graph_i.local_of()
        members = {local[x] for x in hierarchy.levels[level + 1].vertices}
        balls: dict[tuple[int, str], set[int]] = {}
        for x in range(dag.n):
            if x in members:
                continue
            v = ids[x]
            out = {ids[y] for y in bfs_distances(dag, x, radius, "out")}
            for b in _dominating(dag, x, members, epsilon, "out", balls):
                out |= l_out[ids[b]]
            into = {ids[y] for y in bfs_distances(dag, x, radius, "in")}
            for b in _dominating(dag, x, members, epsilon, "in", balls):
                into |= l_in[ids[b]]
            l_out[v], l_in[v] = out, into

    labels = HopLabeling.from_sets(l_out, l_in)
    logger.info(f"Hierarchical labels: h={hierarchy.h}, {labels.total_entries} entries")
    return labels
