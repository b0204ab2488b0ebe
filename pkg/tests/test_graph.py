import numpy as np
import pytest

from binet.asm import parse_disassembly, segment_blocks
from binet.ddg import build_ddg
from binet.generate import random_directed_graph
from binet.graph import (DirectedGraph, EndpointOutOfRange, InconsistentHeader,
                         ParseError, build_graph, degree_sequence, read_edge_list,
                         write_edge_list)
from tests.conftest import SAMPLE_BLOCK_LISTING


def test_duplicate_edges_collapse():
    g = build_graph(3, [(0, 1), (1, 2), (0, 1)])
    assert g.n == 3
    assert g.num_edges == 2


def test_single_isolated_node():
    g = build_graph(1, [])
    assert (g.n, g.num_edges) == (1, 0)


def test_complete_directed_k4():
    edges = [(u, v) for u in range(4) for v in range(4) if u != v]
    g = build_graph(4, edges)
    assert g.num_edges == 12
    assert g.undirected_edge_count == 6


def test_endpoint_out_of_range():
    with pytest.raises(EndpointOutOfRange):
        build_graph(3, [(0, 3)])


def test_insertion_order_irrelevant():
    assert build_graph(4, [(2, 3), (0, 1)]) == build_graph(4, [(0, 1), (2, 3)])


def test_degree_sequence_star():
    g = build_graph(5, [(0, i) for i in range(1, 5)])
    assert degree_sequence(g, "undirected").tolist() == [4, 1, 1, 1, 1]


def test_degree_sequence_directed_cycle():
    g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    assert degree_sequence(g, "in").tolist() == [1, 1, 1]
    assert degree_sequence(g, "out").tolist() == [1, 1, 1]
    assert degree_sequence(g, "total").tolist() == [2, 2, 2]


def test_sample_block_ddg_degree_sum_is_twice_edges():
    # oracle: recount the edges of the built graph
    blocks = segment_blocks(parse_disassembly(SAMPLE_BLOCK_LISTING, syntax="canonical"))
    ddg = build_ddg(blocks[0])
    recounted = len(ddg.edge_set())
    assert int(degree_sequence(ddg, "total").sum()) == 2 * recounted == 8


def test_undirected_degree_sum_on_random_graphs():
    for seed in range(20):
        g = random_directed_graph(200, 600, seed=seed)
        assert int(g.undirected_degrees().sum()) == 2 * g.undirected_edge_count


def test_reciprocated_graph_halves_in_undirected_view():
    base = [(0, 1), (1, 2), (2, 3), (3, 0)]
    g = build_graph(4, base + [(v, u) for u, v in base])
    assert g.num_edges == 8
    assert g.undirected_edge_count == 4


def test_self_loops_tracked_but_dropped_undirected():
    g = build_graph(3, [(0, 0), (0, 1)])
    assert g.has_self_loops
    assert g.undirected_edge_count == 1
    assert g.undirected_degrees().tolist() == [1, 1, 0]


def test_read_edge_list_basic(tmp_path):
    p = tmp_path / "g.edges"
    p.write_text("nodes 3\n0 1\n1 2\n")
    g = read_edge_list(p)
    assert (g.n, g.num_edges) == (3, 2)


def test_read_allows_comments_and_isolated_nodes(tmp_path):
    p = tmp_path / "g.edges"
    p.write_text("# a comment\nnodes 5\n0 1\n")
    g = read_edge_list(p)
    assert (g.n, g.num_edges) == (5, 1)


def test_write_read_identity_random_graphs(tmp_path):
    for seed in (0, 1, 2):
        g = random_directed_graph(1000, 5000, seed=seed)
        p = tmp_path / f"g{seed}.edges"
        write_edge_list(g, p)
        assert read_edge_list(p) == g


def test_canonical_rewrite_is_byte_exact(tmp_path):
    g = random_directed_graph(50, 200, seed=3)
    p1, p2 = tmp_path / "a.edges", tmp_path / "b.edges"
    write_edge_list(g, p1)
    write_edge_list(read_edge_list(p1), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_inconsistent_header(tmp_path):
    p = tmp_path / "bad.edges"
    p.write_text("nodes 2\n0 5\n")
    with pytest.raises(InconsistentHeader):
        read_edge_list(p)


def test_parse_error_carries_line_number(tmp_path):
    p = tmp_path / "bad.edges"
    p.write_text("0 1\nx y\n")
    with pytest.raises(ParseError) as exc:
        read_edge_list(p)
    assert exc.value.line == 2


def test_matrix_csv_import_k3(tmp_path):
    p = tmp_path / "k3.csv"
    p.write_text("0,1,1\n1,0,1\n1,1,0\n")
    g = read_edge_list(p, fmt="matrix")
    assert (g.n, g.num_edges) == (3, 6)


def test_matrix_must_be_square(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("0,1\n1,0,1\n")
    with pytest.raises(ParseError):
        read_edge_list(p, fmt="matrix")


def test_labels_live_in_side_table():
    g = build_graph(2, [(0, 1)], labels={0: "eax", 1: "ebx"})
    assert g.labels == {0: "eax", 1: "ebx"}
    # equality ignores labels
    assert g == build_graph(2, [(0, 1)])
