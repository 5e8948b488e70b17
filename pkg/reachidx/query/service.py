"""
Query service - hop intersection, interval-pruned online search and workloads
"""
from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np

from reachidx.core.config import get_settings
from reachidx.core.errors import InvalidParameter, NoNegativePairs
from reachidx.graph.models import Dag
from reachidx.labeling.models import HopLabeling
from reachidx.oracle.service import TransitiveClosure, compute_tc, reach, sample_positive_pairs
from reachidx.query.models import GrailLabels, QueryWorkload, WorkloadKind

logger = logging.getLogger(__name__)


def query_hop(labels: HopLabeling, u: int, v: int, early_exit: bool = True) -> bool:
    """Sorted merge of L_out(u) and L_in(v)."""
    a, b = labels.l_out[u], labels.l_in[v]
    i = j = 0
    found = False
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            found = True
            if early_exit:
                return True
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1
    return found


# ======================
# GRAIL
# ======================
def grail_build(graph: Dag, c: int = 5, seed: int = 0) -> GrailLabels:
    """c randomized DFS traversals; label = (lowest post-order below, own post-order)."""
    if c < 1:
        raise InvalidParameter(f"traversal count must be >= 1, got {c}")
    n = graph.n
    per_traversal = []
    for i in range(c):
        keys = np.random.default_rng(seed ^ i).permutation(n).tolist() if n else []
        children = [sorted(graph.out_lists[v], key=keys.__getitem__) for v in range(n)]
        roots = sorted((v for v in range(n) if not graph.in_lists[v]), key=keys.__getitem__)
        post = [0] * n
        low = [0] * n
        clock = 0
        for root in roots:
            if post[root]:
                continue
            stack = [(root, 0)]
            while stack:
                v, pos = stack.pop()
                if pos < len(children[v]):
                    stack.append((v, pos + 1))
                    w = children[v][pos]
                    if not post[w] and not low[w]:
                        low[w] = -1  # on the DFS path or finished
                        stack.append((w, 0))
                    continue
                clock += 1
                post[v] = clock
                low[v] = min([clock] + [low[w] for w in graph.out_lists[v]])
        per_traversal.append(list(zip(low, post)))
    labels = tuple(tuple(t[v] for t in per_traversal) for v in range(n))
    return GrailLabels(c, labels)


def query_online(graph: Dag, grail: GrailLabels, u: int, v: int) -> bool:
    """DFS from u, never entering a vertex whose intervals exclude v."""
    if u == v:
        return True
    if not grail.contains(u, v):
        return False
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for w in graph.out_lists[x]:
            if w == v:
                return True
            if w not in seen and grail.contains(w, v):
                seen.add(w)
                stack.append(w)
    return False


# ======================
# Workloads
# ======================
def make_workload(
    graph: Dag,
    kind: WorkloadKind,
    count: int,
    seed: int,
    tc: Optional[TransitiveClosure] = None,
) -> QueryWorkload:
    """equal: ⌈count/2⌉ reachable + the rest unreachable; random: uniform id pairs."""
    if count < 1:
        raise InvalidParameter(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    if kind == "random":
        ids = rng.integers(0, graph.n, size=(count, 2)).tolist()
        return QueryWorkload(tuple((int(u), int(v)) for u, v in ids), kind, seed)
    if kind != "equal":
        raise InvalidParameter(f"unknown workload kind {kind!r}")

    n_pos = math.ceil(count / 2)
    positives = sample_positive_pairs(graph, n_pos, seed, tc)
    if tc is None and graph.n <= get_settings().ORACLE_VERTEX_CAP:
        tc = compute_tc(graph)
    if tc is not None:
        reachable = lambda u, v: reach(tc, u, v)  # noqa: E731
    else:
        grail = grail_build(graph, get_settings().GRAIL_TRAVERSALS, seed)
        reachable = lambda u, v: query_online(graph, grail, u, v)  # noqa: E731

    negatives: list[tuple[int, int]] = []
    attempts = 0
    max_draws = 1000 * (count - n_pos) + 1000
    while len(negatives) < count - n_pos:
        attempts += 1
        if attempts > max_draws:
            raise NoNegativePairs(f"could not find {count - n_pos} unreachable pairs in {max_draws} draws")
        u, v = (int(x) for x in rng.integers(0, graph.n, size=2))
        if not reachable(u, v):
            negatives.append((u, v))

    pairs = positives + negatives
    order = rng.permutation(len(pairs)).tolist()
    logger.info(f"Equal workload: {n_pos} positive, {len(negatives)} negative")
    return QueryWorkload(tuple(pairs[i] for i in order), kind, seed, n_pos)
