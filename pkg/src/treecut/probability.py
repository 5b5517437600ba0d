"""Closed-form probability of a connected partition under tree-deletion sampling.

For a connected graph on n nodes and a partition c into K blocks, the
probability that sampling a uniform spanning tree and deleting a uniform
(K-1)-subset of its edges yields exactly c is

    t(M(g, c)) * prod_k t(c_k)  /  ( C(n-1, K-1) * t(g) )

where t() counts spanning trees, c_k ranges over the induced block subgraphs
and M(g, c) is the contraction multigraph.  The numerator counts the spanning
trees compatible with c (each such tree yields c under exactly one edge
subset); the denominator counts all (tree, subset) pairs.

Everything here is exact: probabilities are ``fractions.Fraction`` values,
reduced automatically, and floats appear only in the rendering helpers.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable

from .errors import PreconditionError
from .graphs import (
    Graph,
    Partition,
    boundary_edges,
    contract,
    induced_subgraph,
    is_connected,
)
from .treecount import count_spanning_trees


def validate_partition(g: Graph, c: Partition, k: int) -> bool:
    """True iff ``c`` has exactly k blocks and every block induces a
    connected subgraph of ``g``."""
    if c.n != g.n:
        raise PreconditionError(
            f"partition covers {c.n} nodes but the graph has {g.n}"
        )
    if c.k != k:
        return False
    return all(
        is_connected(induced_subgraph(g, block)[0]) for block in c.blocks
    )


def block_tree_counts(g: Graph, c: Partition) -> list[int]:
    """Spanning-tree count of each induced block subgraph, in block order."""
    if c.n != g.n:
        raise PreconditionError(
            f"partition covers {c.n} nodes but the graph has {g.n}"
        )
    return [count_spanning_trees(induced_subgraph(g, b)[0]) for b in c.blocks]


def compatible_tree_count(g: Graph, c: Partition) -> int:
    """Number of spanning trees of ``g`` from which ``c`` arises by deleting
    K-1 edges: t(M(g,c)) times the product of the block tree counts."""
    total = count_spanning_trees(contract(g, c))
    for t in block_tree_counts(g, c):
        total *= t
    return total


def partition_probability(g: Graph, c: Partition) -> Fraction:
    """Exact probability that tree-deletion sampling returns ``c``.

    Zero when a block (or the contraction) is disconnected, since the
    corresponding tree count vanishes.  K is the partition's block count.
    """
    if not is_connected(g):
        raise PreconditionError("probability is defined for connected graphs only")
    if c.n != g.n:
        raise PreconditionError(
            f"partition covers {c.n} nodes but the graph has {g.n}"
        )
    numer = compatible_tree_count(g, c)
    denom = comb(g.n - 1, c.k - 1) * count_spanning_trees(g)
    return Fraction(numer, denom)


def two_block_probability(g: Graph, s: Iterable[int]) -> Fraction:
    """Probability of the two-block partition (s, complement of s).

    Direct K=2 form: t(S) * t(V minus S) * |boundary(S)| / ((n-1) * t(g)).
    Agrees exactly with :func:`partition_probability`, whose K=2 contraction
    is a two-node multigraph with w parallel edges and hence w spanning trees.
    """
    if not is_connected(g):
        raise PreconditionError("probability is defined for connected graphs only")
    sel = set(s)
    if not sel or len(sel) == g.n:
        raise PreconditionError("s must be a nonempty proper subset of the nodes")
    rest = set(range(g.n)) - sel
    t_s = count_spanning_trees(induced_subgraph(g, sel)[0])
    t_rest = count_spanning_trees(induced_subgraph(g, rest)[0])
    cut = len(boundary_edges(g, sel))
    return Fraction(t_s * t_rest * cut, (g.n - 1) * count_spanning_trees(g))


# ---------------------------------------------------------------------------
# rendering


def render_rational(value: Fraction) -> str:
    """Always ``num/den``, including ``0/1`` and ``1/1``."""
    return f"{value.numerator}/{value.denominator}"


def render_decimal(value: Fraction, digits: int = 4) -> str:
    """Exact round-half-even decimal rendering with ``digits`` places."""
    if digits < 0:
        raise PreconditionError("digits must be nonnegative")
    n, d = value.numerator, value.denominator
    sign = "-" if n < 0 else ""
    q, r = divmod(abs(n) * 10**digits, d)
    if 2 * r > d or (2 * r == d and q % 2 == 1):
        q += 1
    s = str(q).rjust(digits + 1, "0")
    if digits == 0:
        return sign + s
    return sign + s[:-digits] + "." + s[-digits:]
