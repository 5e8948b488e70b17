"""
Sampled tree cover with a Hoeffding stopping rule

Groups of vertices are processed in random order; after each group the best tree
under the partial weights is tested against the bound and returned once the
estimate is tight enough. The stopping test compares Ŵ(T) with ε₁·N:

    2·ε₁·N / (Ŵ(T) − ε₁·N) ≤ θ,  Ŵ(T) > ε₁·N

`mean_scale=True` applies the stricter form on the per-vertex mean Ŵ(T)/N, which
only passes when the mean y_u(T) exceeds ε₁·N.
"""
from __future__ import annotations

import logging
import math
from typing import Sequence

import numpy as np

from reachidx.core.errors import InvalidParameter
from reachidx.graph.models import Dag
from reachidx.treecover.models import ROOT, SampleEstimate, TreeCover, WeightTable
from reachidx.treecover.service import (
    best_parents,
    conditional_pass,
    exact_weights,
    make_partition,
    tree_from_parents,
)

logger = logging.getLogger(__name__)


def hoeffding_epsilon(n_sampled: int, delta1: float) -> float:
    return math.sqrt(math.log(2.0 / delta1) / (2.0 * n_sampled))


def sample_size(eps1: float, delta1: float) -> int:
    """Samples needed so the mean deviates by more than ε₁ with probability at most δ₁."""
    if eps1 <= 0 or not 0 < delta1 < 1:
        raise InvalidParameter(f"need eps1 > 0 and 0 < delta1 < 1, got {eps1}, {delta1}")
    return math.ceil(math.log(2.0 / delta1) / (2.0 * eps1 * eps1))


def _tree_partial_sum(parents: Sequence[int], partial: np.ndarray) -> int:
    """Σ_{u in sample} y_u(T), which equals the sampled partial weight of T's edges."""
    return sum(int(partial[p]) for p in parents if p != ROOT)


def estimate_tree_weight(graph: Dag, parents: Sequence[int], sample: Sequence[int]) -> float:
    """Ŵ(T) = N · mean of y_u(T) over the sample."""
    if not sample:
        raise InvalidParameter("sample must not be empty")
    partial = conditional_pass(graph, sample)
    return _tree_partial_sum(parents, partial) * graph.n / len(set(sample))


def passes_stopping_test(
    what: float,
    n_total: int,
    eps1: float,
    theta: float,
    mean_scale: bool = False,
) -> bool:
    value = what / n_total if mean_scale else what
    slack = eps1 * n_total
    if value <= slack:
        return False
    return 2.0 * slack / (value - slack) <= theta


def sampled_tree(
    graph: Dag,
    theta: float,
    delta: float,
    group_size: int,
    seed: int,
    mean_scale: bool = False,
) -> tuple[TreeCover, SampleEstimate]:
    if not 0 < theta < 1:
        raise InvalidParameter(f"theta must be in (0, 1), got {theta}")
    if not 0 < delta < 1:
        raise InvalidParameter(f"delta must be in (0, 1), got {delta}")
    if group_size < 1:
        raise InvalidParameter(f"group_size must be >= 1, got {group_size}")

    n_total = graph.n
    delta1 = delta / 2.0
    k = max(1, math.ceil(n_total / group_size))
    partition = make_partition(n_total, k, seed)
    partial = np.zeros(n_total, dtype=np.int64)
    n_sampled = 0
    parents: list[int] = [ROOT] * n_total
    what = eps1 = 0.0

    for used, members in enumerate(partition.groups, start=1):
        if not members:
            continue
        partial += conditional_pass(graph, members)
        n_sampled += len(members)
        parents = best_parents(graph, WeightTable(partial))
        what = _tree_partial_sum(parents, partial) * n_total / n_sampled
        eps1 = hoeffding_epsilon(n_sampled, delta1)
        if used < partition.k and passes_stopping_test(what, n_total, eps1, theta, mean_scale):
            logger.info(f"Sampled tree stopped after {n_sampled}/{n_total} vertices (Ŵ={what:.1f})")
            estimate = SampleEstimate(n_sampled, n_total, partial, what, eps1, delta1, theta, used, True)
            # Ŵ stays in the estimate; the tree carries its true W from one streaming sweep
            weight = _tree_partial_sum(parents, exact_weights(graph).pred_counts)
            return tree_from_parents(parents, weight), estimate

    # every group consumed: partial counts are the exact weights
    tree = tree_from_parents(parents, _tree_partial_sum(parents, partial))
    estimate = SampleEstimate(n_sampled, n_total, partial, float(tree.weight), eps1, delta1, theta, partition.k, False)
    return tree, estimate
