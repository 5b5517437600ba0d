"""Shared fixtures: the worked 10-node example and small graph builders."""

from __future__ import annotations

import random

import pytest

from treecut import Graph, load_graph, parse_partition

# 10-node, 17-edge example graph used throughout as the reference fixture
REFERENCE_ADJACENCY = """\
0 1 1 1 0 0 0 0 0 0
1 0 1 1 1 0 0 0 0 0
1 1 0 1 0 0 0 0 1 0
1 1 1 0 0 1 0 0 0 0
0 1 0 0 0 1 1 0 0 0
0 0 0 1 1 0 1 0 0 1
0 0 0 0 1 1 0 1 0 0
0 0 0 0 0 0 1 0 1 1
0 0 1 0 0 0 0 1 0 1
0 0 0 0 0 1 0 1 1 0
"""

# its worked 3-partition: {1,2,3,4}, {5,6,7}, {8,9,10} in file ids
REFERENCE_PARTITION_TEXT = "1 2 3 4\n5 6 7\n8 9 10\n"


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_chord_graph() -> Graph:
    """4-cycle plus the chord (0, 2): 8 spanning trees, 5 edges."""
    return Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])


def random_connected_graph(n: int, seed: int) -> Graph:
    """Random connected graph: random tree plus ~35% of the remaining edges."""
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < 0.35:
                edges.add((u, v))
    return Graph(n, sorted(edges))


def suite_graphs() -> list[tuple[str, Graph]]:
    """Named connected fixture graphs on at most 6 nodes."""
    out: list[tuple[str, Graph]] = []
    for n in range(2, 7):
        out.append((f"path{n}", path_graph(n)))
    for n in range(3, 7):
        out.append((f"cycle{n}", cycle_graph(n)))
    for n in range(3, 7):
        out.append((f"complete{n}", complete_graph(n)))
    out.append(("cycle4+chord", cycle_chord_graph()))
    out.append(("random6a", random_connected_graph(6, 2024)))
    out.append(("random6b", random_connected_graph(6, 2025)))
    return out


@pytest.fixture(scope="session")
def reference_graph() -> Graph:
    return load_graph(REFERENCE_ADJACENCY, "adjacency-matrix")


@pytest.fixture(scope="session")
def reference_partition(reference_graph):
    return parse_partition(REFERENCE_PARTITION_TEXT, reference_graph.n)


@pytest.fixture()
def reference_files(tmp_path):
    """The example graph and partition written out as CLI input files."""
    graph_path = tmp_path / "reference10.adj"
    graph_path.write_text(REFERENCE_ADJACENCY)
    part_path = tmp_path / "reference10.part"
    part_path.write_text(REFERENCE_PARTITION_TEXT)
    return graph_path, part_path
