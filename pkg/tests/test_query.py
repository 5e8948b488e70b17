import pytest

from reachidx.backbone.models import Backbone
from reachidx.core.errors import InvalidParameter, NoPositivePairs
from reachidx.graph.service import random_dag
from reachidx.labeling.distribution import dl_build
from reachidx.oracle.service import compute_tc, reach
from reachidx.query.indexes import ClosureIndex, HopIndex, MappedIndex, OnlineIndex, ReachIndex
from reachidx.query.models import QueryStats
from reachidx.query.scarab import access_vertices, build_scarab, scarab_online_search, scarab_query
from reachidx.query.service import grail_build, make_workload, query_hop, query_online
from tests.helpers import oracle_mismatches, seeded_dags


class TestHopQuery:
    def test_chain(self, chain3):
        labels = dl_build(chain3)
        assert query_hop(labels, 0, 2)
        assert not query_hop(labels, 2, 0)

    def test_full_merge_agrees(self):
        dag = random_dag(60, 2.0, 1)
        labels = dl_build(dag)
        for u in range(dag.n):
            for v in range(dag.n):
                assert query_hop(labels, u, v) == query_hop(labels, u, v, early_exit=False)


class TestGrail:
    def test_chain_single_traversal(self, chain3):
        grail = grail_build(chain3, c=1)
        assert grail.labels == (((1, 3),), ((1, 2),), ((1, 1),))
        assert grail.contains(0, 2)
        assert not grail.contains(2, 0)

    def test_never_excludes_a_reachable_pair(self):
        for dag in seeded_dags(10, 150, deg=2.5):
            grail = grail_build(dag, c=3, seed=4)
            tc = compute_tc(dag)
            for u in range(dag.n):
                for v in range(dag.n):
                    if reach(tc, u, v):
                        assert grail.contains(u, v)

    def test_online_matches_oracle(self):
        for dag in seeded_dags(8, 120, deg=2.0, first_seed=60):
            grail = grail_build(dag, c=2, seed=1)
            assert not oracle_mismatches(compute_tc(dag), lambda u, v: query_online(dag, grail, u, v))

    def test_seeded(self, diamond_dag):
        assert grail_build(diamond_dag, 4, seed=3) == grail_build(diamond_dag, 4, seed=3)

    def test_rejects_zero_traversals(self, diamond_dag):
        with pytest.raises(InvalidParameter):
            grail_build(diamond_dag, c=0)


class TestWorkload:
    def test_equal_split(self):
        dag = random_dag(80, 1.5, 2)
        tc = compute_tc(dag)
        workload = make_workload(dag, "equal", 101, seed=5, tc=tc)
        assert len(workload.pairs) == 101
        assert workload.positives == 51
        assert sum(reach(tc, u, v) for u, v in workload.pairs) == 51

    def test_random_ids_in_range(self, diamond_dag):
        workload = make_workload(diamond_dag, "random", 200, seed=0)
        assert len(workload.pairs) == 200
        assert all(0 <= u < 4 and 0 <= v < 4 for u, v in workload.pairs)

    def test_seeded(self):
        dag = random_dag(40, 2.0, 3)
        assert make_workload(dag, "equal", 30, 9) == make_workload(dag, "equal", 30, 9)

    def test_rejects_empty_count(self, diamond_dag):
        with pytest.raises(InvalidParameter):
            make_workload(diamond_dag, "random", 0, 0)

    def test_edgeless_has_no_positive_half(self, edgeless):
        with pytest.raises(NoPositivePairs):
            make_workload(edgeless, "equal", 4, 0)


class TestIndexes:
    def test_adapters_share_the_protocol(self, diamond_dag):
        tc = compute_tc(diamond_dag)
        indexes = [
            HopIndex(dl_build(diamond_dag)),
            ClosureIndex(tc),
            OnlineIndex(diamond_dag, grail_build(diamond_dag, 2)),
        ]
        for index in indexes:
            assert isinstance(index, ReachIndex)
            assert index.n == 4
            assert not oracle_mismatches(tc, index.reach)

    def test_mapped_index_routes_input_ids(self, chain3):
        mapped = MappedIndex(ClosureIndex(compute_tc(chain3)), (0, 0, 1, 2))
        assert mapped.n == 4
        assert mapped.reach(1, 0)
        assert mapped.reach(0, 3)
        assert not mapped.reach(3, 1)


class TestScarab:
    def test_chain_with_given_backbone(self, chain4):
        backbone = Backbone((1, 2), ((1, 2),), 1, "two_side")
        index = build_scarab(chain4, epsilon=1, inner="closure", backbone=backbone)
        tc = compute_tc(chain4)
        assert not oracle_mismatches(tc, index.reach)
        assert not oracle_mismatches(tc, lambda u, v: scarab_online_search(index, u, v))

    def test_access_sets_on_chain(self, chain4):
        backbone = Backbone((1, 2), ((1, 2),), 1, "two_side")
        outs, ins = access_vertices(chain4, backbone, reduce=True)
        assert outs == ((1,), (1,), (2,), ())
        assert ins == ((), (1,), (2,), (2,))
        outs, _ = access_vertices(chain4, backbone, reduce=False)
        assert outs[1] == (1, 2)

    @pytest.mark.parametrize("epsilon", [1, 2, 3])
    @pytest.mark.parametrize("inner", ["dl", "tree", "closure"])
    def test_matches_oracle(self, epsilon, inner):
        for dag in seeded_dags(4, 100, deg=2.0, first_seed=epsilon * 10):
            index = build_scarab(dag, epsilon=epsilon, alpha=0.05, c=2, seed=1, inner=inner)
            tc = compute_tc(dag)
            assert not oracle_mismatches(tc, lambda u, v: scarab_query(index, u, v))
            assert not oracle_mismatches(tc, lambda u, v: scarab_online_search(index, u, v))

    def test_unreduced_access_sets(self):
        dag = random_dag(90, 2.5, 77)
        index = build_scarab(dag, epsilon=2, reduce_access=False, prune=True)
        assert not oracle_mismatches(compute_tc(dag), index.reach)

    def test_entries_count_every_part(self, chain4):
        backbone = Backbone((1, 2), ((1, 2),), 1, "two_side")
        index = build_scarab(chain4, epsilon=1, inner="closure", backbone=backbone)
        access = sum(map(len, index.access_out)) + sum(map(len, index.access_in))
        assert index.entries == 1 + access + index.inner.entries


def test_query_stats_reject_negative():
    with pytest.raises(ValueError):
        QueryStats(build_ms=-1.0)
