"""Graph, multigraph and partition types plus the text formats."""

import pytest

from treecut import (
    Graph,
    GraphParseError,
    Multigraph,
    Partition,
    PreconditionError,
    boundary_edges,
    contract,
    induced_subgraph,
    is_connected,
    laplacian,
    load_graph,
    parse_edge_list,
    parse_partition,
    serialize_edge_list,
    serialize_partition,
)

from conftest import REFERENCE_ADJACENCY, cycle_chord_graph, cycle_graph


def test_graph_canonicalizes_edges():
    g = Graph(4, [(3, 1), (2, 0), (0, 1)])
    assert g.edges == ((0, 1), (0, 2), (1, 3))
    assert g.edge_count == 3


def test_graph_rejects_self_loops_and_duplicates():
    with pytest.raises(PreconditionError):
        Graph(3, [(0, 0)])
    with pytest.raises(PreconditionError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(PreconditionError):
        Graph(3, [(0, 3)])
    with pytest.raises(PreconditionError):
        Graph(0, [])


def test_graph_adjacency_and_degree():
    g = cycle_chord_graph()
    assert g.neighbors(0) == (1, 2, 3)
    assert g.degree(0) == 3
    assert g.has_edge(2, 0) and not g.has_edge(1, 3)


def test_graph_equality_and_hash():
    a = Graph(3, [(0, 1), (1, 2)])
    b = Graph(3, [(1, 2), (0, 1)])
    assert a == b and hash(a) == hash(b)
    assert a != Graph(4, [(0, 1), (1, 2)])


def test_multigraph_validation():
    m = Multigraph([[0, 2, 1], [2, 0, 2], [1, 2, 0]])
    assert m.k == 3 and m.edge_total == 5
    with pytest.raises(PreconditionError):
        Multigraph([[1, 0], [0, 0]])  # self loop
    with pytest.raises(PreconditionError):
        Multigraph([[0, 1], [2, 0]])  # asymmetric
    with pytest.raises(PreconditionError):
        Multigraph([[0, -1], [-1, 0]])


def test_partition_canonical_form():
    c = Partition([[5, 3], [4, 0], [2, 1]])
    assert c.blocks == ((0, 4), (1, 2), (3, 5))
    assert c.n == 6 and c.k == 3
    assert c.block_of() == [0, 1, 1, 2, 0, 2]
    assert c == Partition([(3, 5), (1, 2), (0, 4)])


def test_partition_validation():
    with pytest.raises(PreconditionError):
        Partition([[0, 1], [1, 2]])  # overlap
    with pytest.raises(PreconditionError):
        Partition([[0], [2]])  # gap
    with pytest.raises(PreconditionError):
        Partition([[0], []])
    with pytest.raises(PreconditionError):
        Partition([])


def test_partition_helpers():
    assert Partition.whole(4).blocks == ((0, 1, 2, 3),)
    assert Partition.singletons(3).blocks == ((0,), (1,), (2,))
    # ordering is lexicographic on the canonical block tuples
    assert Partition([[1], [0]]) < Partition([[0, 1]])


def test_is_connected():
    assert is_connected(cycle_graph(5))
    assert not is_connected(Graph(4, [(0, 1), (2, 3)]))
    assert is_connected(Graph(1, []))
    assert not is_connected(Multigraph([[0, 0], [0, 0]]))
    assert is_connected(Multigraph([[0, 2], [2, 0]]))


def test_induced_subgraph_relabels():
    g = cycle_chord_graph()
    sub, ids = induced_subgraph(g, [0, 2, 3])
    assert ids == (0, 2, 3)
    # edges (0,2), (2,3), (0,3) survive, relabeled onto 0..2
    assert sub.n == 3 and sub.edges == ((0, 1), (0, 2), (1, 2))


def test_boundary_edges():
    g = cycle_graph(4)
    assert boundary_edges(g, [0]) == ((0, 1), (0, 3))
    assert boundary_edges(g, [0, 1]) == ((0, 3), (1, 2))
    assert boundary_edges(g, [0, 2]) == ((0, 1), (0, 3), (1, 2), (2, 3))


def test_contract_drops_intra_block_edges():
    g = load_graph(REFERENCE_ADJACENCY, "adjacency-matrix")
    c = Partition([range(0, 4), range(4, 7), range(7, 10)])
    m = contract(g, c)
    assert m.mult == ((0, 2, 1), (2, 0, 2), (1, 2, 0))


def test_laplacian_shape():
    g = cycle_chord_graph()
    lap = laplacian(g)
    assert [lap[i][i] for i in range(4)] == [3, 2, 3, 2]
    assert all(sum(row) == 0 for row in lap)
    assert lap[0][2] == -1
    m = Multigraph([[0, 3], [3, 0]])
    assert laplacian(m) == [[3, -3], [-3, 3]]


def test_parse_edge_list_header_and_comments():
    g = parse_edge_list("# a triangle\nn 4\n1 2\n2 3 # chord-free\n1 3\n")
    assert g.n == 4 and g.edges == ((0, 1), (0, 2), (1, 2))
    # without a header the node count is the largest id
    assert parse_edge_list("1 2\n2 3\n").n == 3


@pytest.mark.parametrize(
    "text",
    [
        "",  # empty, no header
        "n 0\n",
        "n x\n",
        "1 2 3\n",
        "1 a\n",
        "0 1\n",  # ids are 1-based
        "2 2\n",
        "n 3\n1 2\n1 2\n",  # duplicate edge
        "n 2\n1 3\n",  # endpoint out of range
    ],
)
def test_parse_edge_list_rejects(text):
    with pytest.raises(GraphParseError):
        parse_edge_list(text)


def test_parse_adjacency_matrix():
    g = load_graph("0,1,1\n1,0,1\n1,1,0\n", "adjacency-matrix")
    assert g.edges == ((0, 1), (0, 2), (1, 2))
    graph10 = load_graph(REFERENCE_ADJACENCY, "adjacency-matrix")
    assert graph10.n == 10 and graph10.edge_count == 17


@pytest.mark.parametrize(
    "text",
    [
        "0 1\n1 0\n0 1\n",  # not square
        "0 1\n0 0\n",  # asymmetric
        "1 1\n1 0\n",  # diagonal
        "0 2\n2 0\n",  # entries must be 0/1
        "0 x\nx 0\n",
        "",
    ],
)
def test_parse_adjacency_matrix_rejects(text):
    with pytest.raises(GraphParseError):
        load_graph(text, "adjacency-matrix")


def test_load_graph_unknown_format():
    with pytest.raises(GraphParseError):
        load_graph("n 2\n1 2\n", "dot")


def test_edge_list_round_trip():
    g = cycle_chord_graph()
    assert parse_edge_list(serialize_edge_list(g)) == g


def test_parse_partition():
    c = parse_partition("3 1\n2\n", 3)
    assert c.blocks == ((0, 2), (1,))
    assert parse_partition("# note\n1 2\n\n3\n", 3).k == 2
    assert serialize_partition(c) == "1 3\n2\n"


@pytest.mark.parametrize(
    "text",
    [
        "",
        "1 2\n",  # does not cover node 3
        "1 2 3 4\n",  # out of range
        "1 2\n2 3\n",  # overlap
        "1 a\n2 3\n",
        "0 1 2\n",  # ids are 1-based
    ],
)
def test_parse_partition_rejects(text):
    with pytest.raises(GraphParseError):
        parse_partition(text, 3)
