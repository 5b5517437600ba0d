"""Spanning-tree samplers and the tree-deletion partition sampler.

The partition sampler draws a spanning tree, deletes a uniformly random
(k-1)-subset of its edges, and returns the connected components.  Two tree
samplers are available:

* ``uniform-tree``: Wilson's loop-erased random walk, exactly uniform over
  all spanning trees.  This is the default, and the only mode for which the
  closed-form partition probability in :mod:`treecut.probability` holds.
* ``randmst-tree``: minimum spanning tree under i.i.d. random edge weights.
  Kept behind an explicit flag because its tree distribution is not uniform
  on all graphs; :func:`treecut.exhaustive.exact_randmst_tree_distribution`
  computes its exact law on small graphs.

Randomness comes from ``random.Random``.  Draw sequences are reproducible for
a given seed within one build of this package (the underlying generator is
seeded, but its stream is not guaranteed bit-stable across Python releases).
"""

from __future__ import annotations

import random
from typing import Iterable

from .errors import PreconditionError
from .graphs import Edge, Graph, Partition, is_connected

RngState = random.Random

SAMPLER_MODES = ("uniform-tree", "randmst-tree")


class SpanningTree:
    """A set of exactly ``n - 1`` edges of the host graph forming a tree."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges: Iterable[Edge]):
        canon = tuple(sorted((u, v) if u < v else (v, u) for u, v in edges))
        if len(canon) != n - 1:
            raise PreconditionError(
                f"a spanning tree on {n} nodes needs {n - 1} edges, got {len(canon)}"
            )
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in canon:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) out of range for n={n}")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise PreconditionError(f"cycle through edge ({u}, {v})")
            parent[ru] = rv
        self.n = n
        self.edges: tuple[Edge, ...] = canon

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [[u + 1, v + 1] for u, v in self.edges]}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SpanningTree)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __lt__(self, other: "SpanningTree") -> bool:
        return self.edges < other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"SpanningTree(n={self.n}, edges={self.edges})"


def make_rng(seed: int, stream: int = 0) -> RngState:
    """Seeded generator for ``(seed, stream)``.

    Distinct streams of the same seed are independent for practical purposes
    (the pair is hashed into the seed material), which is how parallel Monte
    Carlo splits work while staying reproducible under any worker count.
    """
    return random.Random(f"treecut:{seed}:{stream}")


def sample_spanning_tree_uniform(g: Graph, rng: RngState) -> SpanningTree:
    """Exactly uniform spanning tree via Wilson's algorithm rooted at node 0.

    From each node not yet in the tree, walk at random recording the last
    exit edge of every visited node; revisiting a node overwrites its exit,
    which erases loops in the order they form.  Retracing the surviving exit
    pointers adds the loop-erased path to the tree.  The output law does not
    depend on the root; fixing node 0 keeps seeded runs deterministic.
    """
    if not is_connected(g):
        raise PreconditionError("cannot sample a spanning tree of a disconnected graph")
    n = g.n
    adj = g.adjacency
    in_tree = bytearray(n)
    in_tree[0] = 1
    exit_to = [0] * n
    choice = rng.choice
    for start in range(1, n):
        u = start
        while not in_tree[u]:
            nxt = choice(adj[u])
            exit_to[u] = nxt
            u = nxt
        u = start
        while not in_tree[u]:
            in_tree[u] = 1
            u = exit_to[u]
    return SpanningTree(n, ((u, exit_to[u]) for u in range(1, n)))


def sample_spanning_tree_randmst(g: Graph, rng: RngState) -> SpanningTree:
    """Minimum spanning tree under i.i.d. Uniform(0,1) edge weights.

    Weights are distinct with probability 1; ties break by edge index.  Not
    certified uniform over spanning trees; see the module docstring.
    """
    if not is_connected(g):
        raise PreconditionError("cannot sample a spanning tree of a disconnected graph")
    n = g.n
    order = sorted(range(len(g.edges)), key=lambda i: (rng.random(), i))
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for i in order:
        u, v = g.edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.append((u, v))
            if len(chosen) == n - 1:
                break
    return SpanningTree(n, chosen)


def sample_edge_subset(count: int, size: int, rng: RngState) -> tuple[int, ...]:
    """Uniform random ``size``-subset of ``range(count)``, as sorted indexes.

    Partial Fisher-Yates: after ``size`` swap steps the prefix is a uniform
    ordered sample without replacement, hence the set is a uniform subset.
    """
    if not (0 <= size <= count):
        raise PreconditionError(f"cannot choose {size} of {count} items")
    items = list(range(count))
    for i in range(size):
        j = rng.randrange(i, count)
        items[i], items[j] = items[j], items[i]
    return tuple(sorted(items[:size]))


def components_after_deletion(
    tree: SpanningTree, removed: Iterable[Edge]
) -> Partition:
    """Connected components of the forest obtained by deleting ``removed``
    from the tree.  Deleting j edges of a tree always leaves j+1 blocks."""
    gone = {(u, v) if u < v else (v, u) for u, v in removed}
    tree_edges = set(tree.edges)
    for e in gone:
        if e not in tree_edges:
            raise PreconditionError(f"removed edge {e} is not in the tree")
    n = tree.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in tree.edges:
        if e not in gone:
            ru, rv = find(e[0]), find(e[1])
            if ru != rv:
                parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return Partition(groups.values())


def sample_connected_partition(
    g: Graph, k: int, rng: RngState, mode: str = "uniform-tree"
) -> Partition:
    """Sample a partition of the graph into k connected blocks.

    Draws a spanning tree (per ``mode``), removes a uniformly random
    (k-1)-subset of its n-1 edges via partial Fisher-Yates, and returns the
    canonical partition given by the remaining forest's components.  Every
    block induces a connected subgraph by construction.
    """
    if mode not in SAMPLER_MODES:
        raise PreconditionError(f"unknown sampler mode {mode!r}")
    if not (1 <= k <= g.n):
        raise PreconditionError(f"k must be in 1..{g.n}, got {k}")
    if mode == "uniform-tree":
        tree = sample_spanning_tree_uniform(g, rng)
    else:
        tree = sample_spanning_tree_randmst(g, rng)
    picked = sample_edge_subset(g.n - 1, k - 1, rng)
    removed = tuple(tree.edges[i] for i in picked)
    return components_after_deletion(tree, removed)
