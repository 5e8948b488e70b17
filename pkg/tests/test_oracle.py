from collections import Counter

import pytest

from reachidx.core.errors import NoPositivePairs, OracleCapExceeded
from reachidx.graph.service import random_dag
from reachidx.oracle.service import (
    bit_positions,
    compute_tc,
    find_disagreement,
    positive_pair_count,
    reach,
    sample_positive_pairs,
    successors,
)


def test_diamond_closure(diamond_dag):
    tc = compute_tc(diamond_dag)
    assert reach(tc, 0, 3)
    assert not reach(tc, 1, 2)
    assert not reach(tc, 3, 0)
    assert all(reach(tc, v, v) for v in range(4))
    assert tc.total_size == 9
    assert positive_pair_count(tc) == 5
    assert successors(tc, 0) == [0, 1, 2, 3]
    assert successors(tc, 2) == [2, 3]


def test_chain_closure_size(chain4):
    tc = compute_tc(chain4)
    assert positive_pair_count(tc) == 6
    assert [tc.pred_count(v) for v in range(4)] == [1, 2, 3, 4]


def test_cap_exceeded(chain4):
    with pytest.raises(OracleCapExceeded):
        compute_tc(chain4, cap=3)


def test_cap_from_settings(chain4, override_settings):
    override_settings(ORACLE_VERTEX_CAP=2)
    with pytest.raises(OracleCapExceeded):
        compute_tc(chain4)


def test_bit_positions():
    assert bit_positions(0).tolist() == []
    assert bit_positions(0b101001).tolist() == [0, 3, 5]
    assert bit_positions(1 << 300).tolist() == [300]


def test_succ_mirrors_pred():
    dag = random_dag(80, 2.5, 3)
    tc = compute_tc(dag)
    for u in range(dag.n):
        for v in successors(tc, u):
            assert reach(tc, u, v)


class TestSampling:
    def test_uniform_over_diamond_pairs(self, diamond_dag):
        pairs = sample_positive_pairs(diamond_dag, 5000, seed=1)
        counts = Counter(pairs)
        assert set(counts) == {(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)}
        assert all(800 <= c <= 1200 for c in counts.values())

    def test_pairs_are_reachable_and_distinct(self):
        dag = random_dag(60, 2.0, 5)
        tc = compute_tc(dag)
        for u, v in sample_positive_pairs(dag, 300, seed=2, tc=tc):
            assert u != v
            assert reach(tc, u, v)

    def test_seeded(self, diamond_dag):
        assert sample_positive_pairs(diamond_dag, 50, 9) == sample_positive_pairs(diamond_dag, 50, 9)

    def test_edgeless_has_no_positives(self, edgeless):
        with pytest.raises(NoPositivePairs):
            sample_positive_pairs(edgeless, 10, 0)

    def test_bfs_fallback_above_cap(self, override_settings):
        override_settings(ORACLE_VERTEX_CAP=10, POSITIVE_BFS_LIMIT=5)
        dag = random_dag(40, 2.0, 8)
        tc = compute_tc(dag, cap=100)
        pairs = sample_positive_pairs(dag, 100, seed=3)
        assert len(pairs) == 100
        assert all(u != v and reach(tc, u, v) for u, v in pairs)


def test_find_disagreement(diamond_dag):
    tc = compute_tc(diamond_dag)
    assert find_disagreement(tc, lambda u, v: reach(tc, u, v)) is None
    wrong = find_disagreement(tc, lambda u, v: reach(tc, u, v) and (u, v) != (0, 3))
    assert wrong == (0, 3)
    assert find_disagreement(tc, lambda u, v: False, pairs=[(1, 2), (2, 2)]) == (2, 2)
