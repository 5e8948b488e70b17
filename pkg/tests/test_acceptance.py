"""Full-size property runs. Deselected by default; run with `pytest -m slow`."""
import itertools
import time

import numpy as np
import pytest

from reachidx.backbone.service import discover_backbone, verify_backbone
from reachidx.graph.fixtures import CHAIN3, CHAIN4, DIAMOND
from reachidx.graph.service import random_dag
from reachidx.labeling.distribution import check_non_redundancy, dl_build
from reachidx.labeling.hierarchical import hl_build
from reachidx.oracle.service import compute_tc, find_disagreement
from reachidx.query.scarab import build_scarab, scarab_online_search, scarab_query
from reachidx.query.service import grail_build, make_workload, query_hop, query_online
from reachidx.treecover.ktree import ktree_refine
from reachidx.treecover.models import ROOT
from reachidx.treecover.sampling import sample_size, sampled_tree
from reachidx.treecover.service import (
    batched_weights,
    best_parents,
    build_tree,
    compress_tc,
    conditional_pass,
    exact_weights,
    make_partition,
    query_tree,
    tree_from_parents,
)
from tests.helpers import seeded_dags

pytestmark = pytest.mark.slow


def _pairs(n, seed):
    if n <= 128:
        return None
    ids = np.random.default_rng(seed).integers(0, n, size=(100_000, 2)).tolist()
    return [(u, v) for u, v in ids]


def test_sample_size_formula():
    assert abs(sample_size(0.01, 0.01) - 26491) <= 1


def test_every_query_path_agrees_with_the_oracle():
    graphs = [CHAIN3, CHAIN4, DIAMOND, *seeded_dags(100, 512, deg=2.0)]
    for seed, dag in enumerate(graphs):
        tc = compute_tc(dag)
        pairs = _pairs(dag.n, seed)
        dl = dl_build(dag)
        assert find_disagreement(tc, lambda u, v: query_hop(dl, u, v), pairs) is None
        for eps in (1, 2):
            hl = hl_build(dag, eps, core_limit=max(1, dag.n // 4))
            assert find_disagreement(tc, lambda u, v: query_hop(hl, u, v), pairs) is None
        tree = build_tree(dag, exact_weights(dag, tc))
        ctc = compress_tc(dag, tree)
        assert find_disagreement(tc, lambda u, v: query_tree(ctc, tree, u, v), pairs) is None
        grail = grail_build(dag, 5, seed)
        assert find_disagreement(tc, lambda u, v: query_online(dag, grail, u, v), pairs) is None
        index = build_scarab(dag, 2, 0.05, 5, seed)
        assert find_disagreement(tc, lambda u, v: scarab_query(index, u, v), pairs) is None
        assert find_disagreement(tc, lambda u, v: scarab_online_search(index, u, v), pairs) is None


def test_tree_optimality_by_enumeration():
    counts_of = lambda dag: exact_weights(dag).pred_counts  # noqa: E731
    for dag in seeded_dags(500, 7, deg=1.5):
        counts = counts_of(dag)
        best = compress_tc(dag, build_tree(dag, exact_weights(dag))).total_entries
        for parents in itertools.product(*[[ROOT, *p] for p in dag.in_lists]):
            weight = sum(int(counts[p]) for p in parents if p != ROOT)
            assert compress_tc(dag, tree_from_parents(list(parents), weight)).total_entries >= best


def test_compression_identity_at_size():
    for dag in seeded_dags(100, 1000, deg=2.0):
        tree = build_tree(dag, exact_weights(dag))
        assert compress_tc(dag, tree).total_entries == compute_tc(dag).total_size - tree.weight


def test_group_decomposition_at_size():
    for seed, dag in enumerate(seeded_dags(20, 1000, deg=2.0)):
        exact = exact_weights(dag)
        for k in (1, 2, 7, dag.n):
            partition = make_partition(dag.n, k, seed)
            total = sum(conditional_pass(dag, g) for g in partition.groups)
            assert np.array_equal(total, exact.pred_counts)
        assert best_parents(dag, batched_weights(dag, 7, seed)) == best_parents(dag, exact)


def test_sampling_guarantee():
    failures = early = 0
    for seed in range(100):
        dag = random_dag(2000, 2.0, seed)
        counts = exact_weights(dag).pred_counts
        optimal = build_tree(dag, exact_weights(dag)).weight
        tree, estimate = sampled_tree(dag, 0.05, 0.05, 1024, seed)
        early += estimate.stopped_early
        achieved = sum(int(counts[p]) for p in tree.parent if p != ROOT)
        if optimal and (optimal - achieved) / optimal > 0.05:
            failures += 1
    assert early >= 90
    assert failures / 100 <= 0.05


def test_dl_non_redundancy_and_size():
    for dag in seeded_dags(50, 64, deg=2.0):
        labels = dl_build(dag)
        tc = compute_tc(dag)
        assert check_non_redundancy(dag, labels, tc).ok
        assert labels.total_entries <= 2 * tc.total_size


@pytest.mark.parametrize("epsilon", [1, 2, 3])
def test_backbone_property(epsilon):
    for dag in seeded_dags(100, 512, deg=2.0):
        tc = compute_tc(dag)
        assert verify_backbone(dag, discover_backbone(dag, epsilon, alpha=0.0), tc).ok
        assert verify_backbone(dag, discover_backbone(dag, epsilon, alpha=0.05), tc).ok


@pytest.mark.parametrize("k", [2, 4])
def test_ktree_convergence(k):
    for seed in range(20):
        dag = random_dag(200, 2.0, seed)
        baseline = ktree_refine(dag, 1, 0, seed).objective
        index = ktree_refine(dag, k, 20, seed)
        assert len(index.history) >= 2
        assert list(index.history) == sorted(index.history, reverse=True)
        assert index.objective == index.history[-1] <= baseline


def test_scale_smoke():
    dag = random_dag(100_000, 2.0, 1)
    start = time.perf_counter()
    labels = dl_build(dag)
    build_s = time.perf_counter() - start
    workload = make_workload(dag, "random", 100_000, seed=2)
    start = time.perf_counter()
    answers = [query_hop(labels, u, v) for u, v in workload.pairs]
    query_s = time.perf_counter() - start
    print(f"dl build {build_s:.1f}s, {len(answers)} queries {query_s:.2f}s")
    assert build_s < 60
    assert query_s < 5
    grail = grail_build(dag, 5, 0)
    for (u, v), got in list(zip(workload.pairs, answers))[:2000]:
        assert got == query_online(dag, grail, u, v)
