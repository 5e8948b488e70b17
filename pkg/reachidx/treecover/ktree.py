"""
Multi-tree refinement

k trees and a vertex-to-tree assignment, improved k-means style: assign every
vertex to the tree with its smallest compressed closure, then rebuild each tree
as the optimum for the vertices assigned to it. The optimal tree for a group
uses the group's conditional counts |pred(p) ∩ group| as edge weights.
"""
from __future__ import annotations

import logging

from reachidx.core.errors import InvalidParameter
from reachidx.graph.models import Dag
from reachidx.treecover.models import CompressedTC, MultiTreeIndex, TreeCover, WeightTable
from reachidx.treecover.service import (
    build_tree,
    compress_tc,
    conditional_pass,
    exact_weights,
    make_partition,
    query_tree,
)

logger = logging.getLogger(__name__)


def group_tree(graph: Dag, members) -> TreeCover:
    return build_tree(graph, WeightTable(conditional_pass(graph, members)))


def assign(ctcs: list[CompressedTC], n: int) -> tuple[list[int], int]:
    assignment, objective = [], 0
    for u in range(n):
        sizes = [len(ctc.lists[u]) for ctc in ctcs]
        best = min(range(len(sizes)), key=lambda i: (sizes[i], i))
        assignment.append(best)
        objective += sizes[best]
    return assignment, objective


def ktree_refine(graph: Dag, k: int, max_iters: int, seed: int) -> MultiTreeIndex:
    if k < 1:
        raise InvalidParameter(f"k must be >= 1, got {k}")
    partition = make_partition(graph.n, k, seed)
    trees = [group_tree(graph, members) for members in partition.groups]
    ctcs = [compress_tc(graph, t) for t in trees]
    assignment, objective = assign(ctcs, graph.n)
    if k > 1:
        # the single optimal tree takes slot 0 when random groups start worse than it
        single = build_tree(graph, exact_weights(graph))
        single_ctc = compress_tc(graph, single)
        if single_ctc.total_entries < objective:
            trees[0], ctcs[0] = single, single_ctc
            assignment, objective = assign(ctcs, graph.n)
    history = [objective]

    for iteration in range(max_iters):
        groups: list[list[int]] = [[] for _ in range(k)]
        for u, i in enumerate(assignment):
            groups[i].append(u)
        new_trees = [group_tree(graph, g) if g else trees[i] for i, g in enumerate(groups)]
        new_ctcs = [compress_tc(graph, t) for t in new_trees]
        new_assignment, new_objective = assign(new_ctcs, graph.n)
        history.append(new_objective)
        if new_objective >= objective:
            logger.info(f"Multi-tree converged after {iteration} iterations: objective={objective}")
            break
        trees, ctcs, assignment, objective = new_trees, new_ctcs, new_assignment, new_objective

    return MultiTreeIndex(tuple(trees), tuple(ctcs), tuple(assignment), objective, tuple(history))


def query_multi(index: MultiTreeIndex, u: int, v: int) -> bool:
    i = index.assignment[u]
    return query_tree(index.ctcs[i], index.trees[i], u, v)
