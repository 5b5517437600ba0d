"""Brute-force ground truth: exhaustive enumeration and counting.

These generators certify the closed-form and sampling code on small
instances: spanning trees by deletion/contraction, connected partitions by
restricted-growth strings with a connectivity filter, the sampling law by a
full sweep over every (tree, edge-subset) pair, and the random-weight MST law
by enumerating all edge-rank permutations.  They live in the library, not in
the tests, so the CLI and service can run the same verification on user
graphs.

Enumeration is exponential, so every entry point takes an explicit budget and
fails fast (the tree count is pre-checked via the determinant before any
enumeration starts).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial
from typing import Hashable, Iterable, Sequence

from .errors import BudgetExceededError, PreconditionError
from .graphs import Graph, Partition, is_connected
from .probability import partition_probability
from .sampling import SpanningTree
from .treecount import count_spanning_trees


@dataclass(frozen=True)
class EnumerationBudget:
    """Hard limits for the exhaustive generators."""

    max_nodes: int = 12
    max_trees: int = 100_000
    max_set_partitions: int = 10_000_000

    def __post_init__(self):
        if self.max_nodes < 1 or self.max_trees < 1 or self.max_set_partitions < 1:
            raise PreconditionError("budget limits must be positive")


DEFAULT_BUDGET = EnumerationBudget()

LabeledEdge = tuple[int, int, Hashable]


def stirling2(n: int, k: int) -> int:
    """Number of partitions of an n-set into exactly k blocks."""
    if k < 0 or n < 0:
        raise PreconditionError("stirling2 needs nonnegative arguments")
    if k > n:
        return 0
    # prev[j] = S(i, j); S(i, j) = j * S(i-1, j) + S(i-1, j-1)
    prev = [0] * (k + 1)
    prev[0] = 1
    for i in range(1, n + 1):
        cur = [0] * (k + 1)
        for j in range(1, min(i, k) + 1):
            cur[j] = j * prev[j] + prev[j - 1]
        prev = cur
    return prev[k]


def _component_count(n: int, edges: Iterable[tuple[int, int]]) -> int:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for u, v, *_ in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps


def enumerate_labeled_spanning_trees(
    n: int, edges: Sequence[LabeledEdge]
) -> list[tuple[Hashable, ...]]:
    """All spanning trees of a labeled (multi)graph, as label tuples.

    Deletion/contraction: the trees containing the first edge are the trees
    of the contraction, the rest are the trees of the deletion; the deletion
    branch is pruned when it disconnects the graph.  Parallel edges are fine
    as long as their labels differ, which is what makes this usable as a
    multiplicity oracle.
    """
    result: list[tuple[Hashable, ...]] = []
    chosen: list[Hashable] = []

    def recurse(nodes: int, edge_list: list[LabeledEdge]):
        if nodes == 1:
            result.append(tuple(chosen))
            return
        u, v, label = edge_list[0]
        lo, hi = (u, v) if u < v else (v, u)
        contracted = []
        for a, b, lab in edge_list[1:]:
            a2 = lo if a == hi else (a - 1 if a > hi else a)
            b2 = lo if b == hi else (b - 1 if b > hi else b)
            if a2 != b2:
                contracted.append((a2, b2, lab))
        chosen.append(label)
        recurse(nodes - 1, contracted)
        chosen.pop()
        rest = edge_list[1:]
        if _component_count(nodes, rest) == 1:
            recurse(nodes, rest)

    if n == 1:
        return [()]
    if _component_count(n, edges) != 1:
        return []
    recurse(n, [(u, v, lab) for u, v, lab in edges])
    return result


def enumerate_spanning_trees(
    g: Graph, budget: EnumerationBudget = DEFAULT_BUDGET
) -> list[SpanningTree]:
    """Every spanning tree of ``g`` exactly once, canonically sorted."""
    if g.n > budget.max_nodes:
        raise BudgetExceededError(
            f"graph has {g.n} nodes, budget allows {budget.max_nodes}"
        )
    if not is_connected(g):
        raise PreconditionError("cannot enumerate spanning trees of a disconnected graph")
    total = count_spanning_trees(g)
    if total > budget.max_trees:
        raise BudgetExceededError(
            f"graph has {total} spanning trees, budget allows {budget.max_trees}"
        )
    labeled = [(u, v, (u, v)) for u, v in g.edges]
    trees = [
        SpanningTree(g.n, labels)
        for labels in enumerate_labeled_spanning_trees(g.n, labeled)
    ]
    trees.sort()
    return trees


def _block_connected(adjacency, block: Sequence[int]) -> bool:
    members = set(block)
    seen = {block[0]}
    stack = [block[0]]
    while stack:
        u = stack.pop()
        for v in adjacency[u]:
            if v in members and v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(members)


def enumerate_connected_partitions(
    g: Graph, k: int, budget: EnumerationBudget = DEFAULT_BUDGET
) -> list[Partition]:
    """All partitions of the nodes into exactly k blocks where every block
    induces a connected subgraph, canonically sorted without duplicates.

    Set partitions are generated as restricted growth strings (node 0 gets
    label 0; each node may reuse an existing label or open the next one),
    which yields each unordered partition exactly once, then filtered for
    per-block connectivity.
    """
    if not is_connected(g):
        raise PreconditionError("connected partitions are defined for connected graphs")
    n = g.n
    if not (1 <= k <= n):
        raise PreconditionError(f"k must be in 1..{n}, got {k}")
    if n > budget.max_nodes:
        raise BudgetExceededError(
            f"graph has {n} nodes, budget allows {budget.max_nodes}"
        )
    candidates = stirling2(n, k)
    if candidates > budget.max_set_partitions:
        raise BudgetExceededError(
            f"{candidates} set partitions to scan, budget allows "
            f"{budget.max_set_partitions}"
        )
    if n == 1:
        return [Partition([[0]])]
    adjacency = g.adjacency
    labels = [0] * n
    found: list[Partition] = []

    def grow(i: int, used: int):
        if k - used > n - i:
            return
        if i == n:
            if used == k:
                blocks: list[list[int]] = [[] for _ in range(k)]
                for node, lab in enumerate(labels):
                    blocks[lab].append(node)
                if all(_block_connected(adjacency, b) for b in blocks):
                    found.append(Partition(blocks))
            return
        top = min(used, k - 1)
        for lab in range(top + 1):
            labels[i] = lab
            grow(i + 1, max(used, lab + 1))

    grow(1, 1)
    found.sort()
    return found


# ---------------------------------------------------------------------------
# full sweep over (tree, edge subset) pairs


@dataclass(frozen=True)
class SweepTally:
    """Outcome counts of the exhaustive (tree, subset) sweep for one k."""

    pair_counts: dict
    compatible_tree_counts: dict
    tree_total: int
    subsets_per_tree: int

    @property
    def pair_total(self) -> int:
        return self.tree_total * self.subsets_per_tree


def _forest_blocks_key(n: int, tree_edges, skip: tuple[int, ...]):
    parent = list(range(n))
    si = 0
    m = len(skip)
    for ei in range(n - 1):
        if si < m and skip[si] == ei:
            si += 1
            continue
        u, v = tree_edges[ei]
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        if u != v:
            parent[u] = v
    groups: dict[int, list[int]] = {}
    for x in range(n):
        r = x
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        groups.setdefault(r, []).append(x)
    return tuple(sorted(tuple(b) for b in groups.values()))


@lru_cache(maxsize=8)
def _sweep(g: Graph, k: int, budget: EnumerationBudget) -> SweepTally:
    trees = enumerate_spanning_trees(g, budget)
    n = g.n
    subsets = list(combinations(range(n - 1), k - 1))
    pair_counts: Counter = Counter()
    compat_counts: Counter = Counter()
    for tree in trees:
        te = tree.edges
        produced = set()
        for skip in subsets:
            key = _forest_blocks_key(n, te, skip)
            pair_counts[key] += 1
            produced.add(key)
        for key in produced:
            compat_counts[key] += 1
    to_partition = {key: Partition(key) for key in pair_counts}
    return SweepTally(
        pair_counts={to_partition[key]: c for key, c in pair_counts.items()},
        compatible_tree_counts={to_partition[key]: c for key, c in compat_counts.items()},
        tree_total=len(trees),
        subsets_per_tree=len(subsets),
    )


def brute_force_tallies(
    g: Graph, k: int, budget: EnumerationBudget = DEFAULT_BUDGET
) -> SweepTally:
    """Sweep every (spanning tree, (k-1)-edge-subset) pair of ``g`` and tally
    the produced partitions, plus how many distinct trees can produce each."""
    if not (1 <= k <= g.n):
        raise PreconditionError(f"k must be in 1..{g.n}, got {k}")
    return _sweep(g, k, budget)


def brute_force_distribution(
    g: Graph, k: int, budget: EnumerationBudget = DEFAULT_BUDGET
) -> dict[Partition, Fraction]:
    """Exact sampling law for k blocks, computed by pure counting."""
    tally = brute_force_tallies(g, k, budget)
    denom = tally.pair_total
    return {
        part: Fraction(count, denom)
        for part, count in sorted(tally.pair_counts.items())
    }


def brute_force_probability(
    g: Graph, c: Partition, budget: EnumerationBudget = DEFAULT_BUDGET
) -> Fraction:
    """Exact probability of one partition via the full sweep.

    Must equal :func:`treecut.probability.partition_probability`; the two
    sides share no code beyond the graph type.
    """
    if c.n != g.n:
        raise PreconditionError(
            f"partition covers {c.n} nodes but the graph has {g.n}"
        )
    tally = brute_force_tallies(g, c.k, budget)
    return Fraction(tally.pair_counts.get(c, 0), tally.pair_total)


def exact_partition_distribution(
    g: Graph, k: int, budget: EnumerationBudget = DEFAULT_BUDGET
) -> dict[Partition, Fraction]:
    """Closed-form probability for every connected k-partition in the
    enumerated support (canonical order)."""
    return {
        c: partition_probability(g, c)
        for c in enumerate_connected_partitions(g, k, budget)
    }


# ---------------------------------------------------------------------------
# exact law of the random-weight MST sampler


def exact_randmst_tree_distribution(
    g: Graph, budget: EnumerationBudget = DEFAULT_BUDGET
) -> dict[SpanningTree, Fraction]:
    """Exact spanning-tree law of the random-weight MST sampler.

    Under i.i.d. continuous weights every rank order of the edges is equally
    likely, so running the greedy MST once per permutation of the edge list
    and tallying with weight 1/|E|! gives the exact distribution.  Limited to
    |E| <= 9 (factorial enumeration).
    """
    m = len(g.edges)
    if m > 9:
        raise PreconditionError(
            f"graph has {m} edges; the permutation oracle handles at most 9"
        )
    if not is_connected(g):
        raise PreconditionError("cannot enumerate spanning trees of a disconnected graph")
    n = g.n
    edges = g.edges
    tally: Counter = Counter()
    for perm in permutations(range(m)):
        parent = list(range(n))
        chosen = []
        for i in perm:
            u, v = edges[i]
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            if u != v:
                parent[u] = v
                chosen.append(i)
                if len(chosen) == n - 1:
                    break
        tally[frozenset(chosen)] += 1
    total = factorial(m)
    dist = {
        SpanningTree(n, (edges[i] for i in key)): Fraction(count, total)
        for key, count in tally.items()
    }
    return dict(sorted(dist.items()))


def exact_randmst_partition_distribution(
    g: Graph, k: int, budget: EnumerationBudget = DEFAULT_BUDGET
) -> dict[Partition, Fraction]:
    """Exact partition law of randmst-tree mode: the tree law pushed through
    the uniform (k-1)-edge-subset deletion."""
    if not (1 <= k <= g.n):
        raise PreconditionError(f"k must be in 1..{g.n}, got {k}")
    tree_dist = exact_randmst_tree_distribution(g, budget)
    n = g.n
    per_subset = Fraction(1, comb(n - 1, k - 1))
    acc: dict[tuple, Fraction] = {}
    for tree, p_tree in tree_dist.items():
        weight = p_tree * per_subset
        for skip in combinations(range(n - 1), k - 1):
            key = _forest_blocks_key(n, tree.edges, skip)
            acc[key] = acc.get(key, Fraction(0)) + weight
    return {Partition(key): p for key, p in sorted(acc.items())}
