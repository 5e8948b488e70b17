import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reachidx.core.errors import CycleDetected, InputFormatError, InvalidParameter
from reachidx.graph.fixtures import chain
from reachidx.graph.models import Dag
from reachidx.graph.service import (
    bfs_distances,
    condense,
    distance,
    format_edge_list,
    k_neighborhood,
    parse_edge_list,
    random_dag,
    topological_order,
)


class TestParseEdgeList:
    def test_header_and_edges(self):
        el = parse_edge_list("3 2\n0 1\n1 2\n")
        assert el.num_vertices == 3
        assert el.edges == ((0, 1), (1, 2))

    def test_comments_and_blank_lines(self):
        el = parse_edge_list(b"# a comment\n\n3 2\n0 1  # trailing\n1 2\n")
        assert el.num_vertices == 3
        assert el.edges == ((0, 1), (1, 2))

    def test_id_out_of_range_names_the_line(self):
        with pytest.raises(InputFormatError, match="line 2"):
            parse_edge_list("2 1\n0 5\n")

    def test_malformed_line(self):
        with pytest.raises(InputFormatError, match="line 1"):
            parse_edge_list("0 x\n")

    def test_self_loop_dropped(self):
        el = parse_edge_list("0 0\n0 1\n")
        assert el.edges == ((0, 1),)
        assert el.self_loops_dropped == 1
        assert el.num_vertices == 2

    def test_duplicates_dropped(self):
        el = parse_edge_list("0 1\n0 1\n1 2\n")
        assert el.edges == ((0, 1), (1, 2))
        assert el.duplicates_dropped == 1

    def test_headerless_file_sizes_from_max_id(self):
        el = parse_edge_list("0 4\n")
        assert el.num_vertices == 5

    def test_header_only(self):
        el = parse_edge_list("1 0\n")
        assert el.num_vertices == 1
        assert el.edges == ()

    def test_detected_header_is_logged(self, caplog):
        with caplog.at_level(logging.WARNING, logger="reachidx.graph.service"):
            parse_edge_list("3 2\n0 1\n1 2\n")
        assert "read as header n=3 m=2" in caplog.text

    def test_header_with_wrong_count_is_read_as_edge_with_warning(self, caplog):
        with caplog.at_level(logging.WARNING, logger="reachidx.graph.service"):
            el = parse_edge_list("3 5\n0 1\n1 2\n")
        assert el.edges == ((3, 5), (0, 1), (1, 2))
        assert el.num_vertices == 6
        assert "declares m=5 for 2 edge lines" in caplog.text

    def test_explicit_header_choice_is_silent(self, caplog):
        with caplog.at_level(logging.WARNING, logger="reachidx.graph.service"):
            el = parse_edge_list("2 1\n0 1\n", header=False)
        assert el.edges == ((2, 1), (0, 1))
        assert caplog.text == ""


class TestCondense:
    def test_cycle_plus_tail(self):
        dag, cmap = condense(parse_edge_list("0 1\n1 2\n2 0\n2 3\n"))
        assert dag.n == 2
        assert list(dag.edges()) == [(0, 1)]
        assert cmap.component_of == (0, 0, 0, 1)
        assert cmap.components == ((0, 1, 2), (3,))

    def test_two_cycle(self):
        dag, cmap = condense(parse_edge_list("0 1\n1 0\n"))
        assert dag.n == 1
        assert cmap.component_of == (0, 0)

    def test_acyclic_is_identity(self):
        dag, cmap = condense(parse_edge_list("4 4\n0 1\n0 2\n1 3\n2 3\n"))
        assert cmap.is_identity
        assert dag == Dag.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])

    def test_long_chain_does_not_recurse(self):
        n = 5000
        text = "".join(f"{i} {i + 1}\n" for i in range(n - 1))
        dag, cmap = condense(parse_edge_list(text))
        assert dag.n == n
        assert cmap.is_identity

    def test_long_cycle_collapses(self):
        n = 3000
        text = "".join(f"{i} {(i + 1) % n}\n" for i in range(n))
        dag, _ = condense(parse_edge_list(text))
        assert dag.n == 1
        assert dag.m == 0


class TestDag:
    def test_cycle_rejected(self):
        with pytest.raises(CycleDetected):
            Dag.from_edges(3, [(0, 1), (1, 2), (2, 0)])

    def test_topological_order_min_id(self, diamond_dag):
        assert topological_order(diamond_dag) == [0, 1, 2, 3]

    def test_topological_order_respects_edges(self):
        dag = random_dag(300, 3.0, 11)
        rank = dag.topo_rank
        assert all(rank[u] < rank[v] for u, v in dag.edges())

    def test_neighbors_sorted(self, diamond_dag):
        assert diamond_dag.successors(0) == [1, 2]
        assert diamond_dag.predecessors(3) == [1, 2]

    @pytest.mark.parametrize("seed", range(5))
    def test_in_and_out_csr_are_transposes(self, seed):
        dag = random_dag(400, 3.0, seed)
        out_pairs = set()
        for u in range(dag.n):
            for v in dag.out_targets[dag.out_offsets[u]:dag.out_offsets[u + 1]].tolist():
                out_pairs.add((u, v))
        in_pairs = set()
        for v in range(dag.n):
            for u in dag.in_sources[dag.in_offsets[v]:dag.in_offsets[v + 1]].tolist():
                in_pairs.add((u, v))
        assert out_pairs == in_pairs
        assert len(out_pairs) == dag.m == int(dag.in_offsets[-1])


class TestNeighborhoods:
    def test_k_neighborhood(self, diamond_dag):
        assert k_neighborhood(diamond_dag, 0, 1, "out") == {0, 1, 2}
        assert k_neighborhood(diamond_dag, 0, 2, "out") == {0, 1, 2, 3}
        assert k_neighborhood(diamond_dag, 3, 1, "in") == {1, 2, 3}
        assert k_neighborhood(diamond_dag, 2, 0, "out") == {2}

    def test_negative_radius(self, diamond_dag):
        with pytest.raises(InvalidParameter):
            k_neighborhood(diamond_dag, 0, -1)

    def test_distance(self, diamond_dag):
        assert distance(diamond_dag, 0, 3) == 2
        assert distance(diamond_dag, 3, 0) is None
        assert distance(diamond_dag, 1, 1) == 0

    def test_halt_records_but_does_not_expand(self, chain4):
        assert bfs_distances(chain4, 0, None, "out", halt=lambda x: x == 1) == {0: 0, 1: 1}

    def test_admit_filters_visits(self, diamond_dag):
        assert set(bfs_distances(diamond_dag, 0, None, "out", admit=lambda x: x != 1)) == {0, 2, 3}


class TestRandomDag:
    def test_deterministic(self):
        assert random_dag(50, 2.0, 7) == random_dag(50, 2.0, 7)

    def test_single_vertex(self):
        dag = random_dag(1, 2.0, 0)
        assert dag.n == 1 and dag.m == 0

    def test_rejects_empty(self):
        with pytest.raises(InvalidParameter):
            random_dag(0, 1.0, 0)

    @given(st.integers(min_value=1, max_value=120), st.floats(min_value=0, max_value=4), st.integers(0, 2**16))
    def test_format_reparses_to_same_dag(self, n, deg, seed):
        dag = random_dag(n, deg, seed)
        el = parse_edge_list(format_edge_list(dag))
        assert Dag.from_edges(el.num_vertices, el.edges) == dag


def test_chain_fixture():
    assert list(chain(4).edges()) == [(0, 1), (1, 2), (2, 3)]


def test_self_loop_under_header():
    el = parse_edge_list("2 1\n0 0\n")
    assert el.num_vertices == 2
    assert el.edges == ()
    assert el.self_loops_dropped == 1


def _reachable(adjacency, source):
    seen, stack = {source}, [source]
    while stack:
        for w in adjacency[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=200), st.integers(min_value=0, max_value=600), st.integers(0, 2**16))
def test_components_are_mutual_reachability(n, m, seed):
    rng = np.random.default_rng(seed)
    pairs = rng.integers(0, n, size=(m, 2)).tolist()
    el = parse_edge_list(f"{n} {len(pairs)}\n" + "".join(f"{u} {v}\n" for u, v in pairs))
    adjacency = [[] for _ in range(n)]
    for u, v in el.edges:
        adjacency[u].append(v)
    reach = [_reachable(adjacency, v) for v in range(n)]
    _, cmap = condense(el)
    for a in range(n):
        for b in range(n):
            mutual = b in reach[a] and a in reach[b]
            assert mutual == (cmap.component_of[a] == cmap.component_of[b])


def test_unbounded_neighborhood_is_the_successor_set():
    dag = random_dag(120, 2.0, 5)
    adjacency = dag.out_lists
    for v in range(0, dag.n, 7):
        assert k_neighborhood(dag, v, dag.n, "out") == _reachable(adjacency, v)
