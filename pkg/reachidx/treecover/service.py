"""
Tree-cover service - edge weights, optimal tree, interval labels and compressed closure

CRITICAL: the weight of tree edge (p, v) is |pred(p)|, so
|compressed closure| = |TC| - W(T) for every spanning tree T.
"""
from __future__ import annotations

import logging
from typing import Iterable, Optional

import numpy as np

from reachidx.core.errors import InvalidParameter
from reachidx.graph.models import Dag
from reachidx.oracle.service import TransitiveClosure
from reachidx.treecover.models import ROOT, CompressedTC, GroupPartition, TreeCover, WeightTable

logger = logging.getLogger(__name__)


# ======================
# Weights
# ======================
def _sweep_counts(graph: Dag, seed_bits: list[int]) -> np.ndarray:
    """Propagate per-vertex bit sets down the topological order and count them.

    A vertex's bits are dropped once every out-neighbor has consumed them, so at most
    the current frontier of bit sets is alive at any time.
    """
    counts = np.zeros(graph.n, dtype=np.int64)
    live: dict[int, int] = {}
    pending = [len(graph.out_lists[v]) for v in range(graph.n)]
    for v in graph.topo:
        bits = seed_bits[v]
        for u in graph.in_lists[v]:
            bits |= live[u]
            pending[u] -= 1
            if pending[u] == 0:
                del live[u]
        counts[v] = bits.bit_count()
        if pending[v]:
            live[v] = bits
    return counts


def exact_weights(graph: Dag, tc: Optional[TransitiveClosure] = None) -> WeightTable:
    """w(p, v) = |pred(p)|; without a closure the counts come from one streaming sweep."""
    if tc is not None:
        counts = np.array([tc.pred_count(v) for v in range(graph.n)], dtype=np.int64)
    else:
        counts = _sweep_counts(graph, [1 << v for v in range(graph.n)])
    return WeightTable(counts)


def conditional_pass(graph: Dag, group: Iterable[int]) -> np.ndarray:
    """|pred(v) ∩ group| for every v, propagating only the group's bits."""
    local = {v: i for i, v in enumerate(sorted(set(group)))}
    seed_bits = [0] * graph.n
    for v, bit in local.items():
        if not 0 <= v < graph.n:
            raise InvalidParameter(f"group member {v} outside 0..{graph.n - 1}")
        seed_bits[v] = 1 << bit
    return _sweep_counts(graph, seed_bits)


def make_partition(n: int, k: int, seed: int) -> GroupPartition:
    """Seeded random split of 0..n-1 into k groups whose sizes differ by at most one."""
    if k < 1:
        raise InvalidParameter(f"group count must be >= 1, got {k}")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    groups = tuple(tuple(sorted(chunk.tolist())) for chunk in np.array_split(perm, k))
    group_of = [0] * n
    for gid, members in enumerate(groups):
        for v in members:
            group_of[v] = gid
    return GroupPartition(groups, tuple(group_of))


def batched_weights(graph: Dag, k: int, seed: int) -> WeightTable:
    """Exact weights as the sum of k conditional passes over a random partition."""
    partition = make_partition(graph.n, k, seed)
    counts = np.zeros(graph.n, dtype=np.int64)
    for members in partition.groups:
        counts += conditional_pass(graph, members)
    logger.info(f"Batched weights: {partition.k} passes over {graph.n} vertices")
    return WeightTable(counts)


# ======================
# Tree
# ======================
def best_parents(graph: Dag, weights: WeightTable) -> list[int]:
    """Max-weight in-neighbor per vertex, smallest id on ties, ROOT when there is none."""
    counts = weights.pred_counts
    parents = []
    for v in range(graph.n):
        best, best_w = ROOT, -1
        for p in graph.in_lists[v]:  # ascending ids, so strict > keeps the smallest
            w = int(counts[p])
            if w > best_w:
                best, best_w = p, w
        parents.append(best)
    return parents


def tree_from_parents(parents: list[int], weight: int) -> TreeCover:
    n = len(parents)
    children: list[list[int]] = [[] for _ in range(n)]
    roots: list[int] = []
    for v, p in enumerate(parents):
        (roots if p == ROOT else children[p]).append(v)

    interval: list[tuple[int, int]] = [(0, 0)] * n
    clock = 0
    for root in roots:
        stack = [(root, False)]
        while stack:
            v, done = stack.pop()
            if done:
                interval[v] = (interval[v][0], clock)
                continue
            clock += 1
            interval[v] = (clock, 0)
            stack.append((v, True))
            stack.extend((c, False) for c in reversed(children[v]))

    return TreeCover(tuple(parents), tuple(interval), weight)


def build_tree(graph: Dag, weights: WeightTable) -> TreeCover:
    parents = best_parents(graph, weights)
    tree = tree_from_parents(parents, sum(weights.weight(p, v) for v, p in enumerate(parents)))
    logger.info(f"Tree cover over {graph.n} vertices: W={tree.weight}")
    return tree


# ======================
# Compressed closure
# ======================
def compress_tc(graph: Dag, tree: TreeCover) -> CompressedTC:
    """Maximal tree subtrees inside succ(u), for every u, merged bottom-up."""
    lists: list[list[tuple[int, int]]] = [[] for _ in range(graph.n)]
    for u in reversed(graph.topo):
        candidates = [tree.interval[u]]
        for w in graph.out_lists[u]:
            candidates.extend(lists[w])
        candidates.sort(key=lambda iv: (iv[0], -iv[1]))
        kept: list[tuple[int, int]] = []
        for a, b in candidates:
            if kept and a <= kept[-1][1]:
                continue  # contained: tree intervals never partially overlap
            kept.append((a, b))
        lists[u] = kept
    ctc = CompressedTC.from_lists(lists)
    logger.info(f"Compressed closure: {ctc.total_entries} intervals")
    return ctc


def compressed_sizes(ctc: CompressedTC) -> list[int]:
    return [len(row) for row in ctc.lists]


def query_tree(ctc: CompressedTC, tree: TreeCover, u: int, v: int) -> bool:
    return ctc.covers(u, tree.interval[v][0])
