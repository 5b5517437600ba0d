"""Exact spanning-tree counting via determinants of Laplacian minors.

Counts are exact arbitrary-precision integers: the determinant is evaluated
with Bareiss fraction-free elimination over Python ints, never floating
point.  The count is 0 exactly when the (multi)graph is disconnected, and is
cached on the immutable graph instance after the first computation.
"""

from __future__ import annotations

from .errors import PreconditionError
from .graphs import Graph, Multigraph, laplacian

IntMatrix = list[list[int]]


def bareiss_determinant(m: IntMatrix) -> int:
    """Exact determinant of a square integer matrix.

    Bareiss elimination: every division in

        a[i][j] <- (a[i][j] * a[r][r] - a[i][r] * a[r][j]) // prev

    is exact, so intermediate entries stay integers of modest size instead of
    exploding like fraction-free expansion would.
    """
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    for row in a:
        if len(row) != n:
            raise PreconditionError("matrix must be square")
    sign = 1
    prev = 1
    for r in range(n - 1):
        if a[r][r] == 0:
            for i in range(r + 1, n):
                if a[i][r] != 0:
                    a[r], a[i] = a[i], a[r]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[r][r]
        for i in range(r + 1, n):
            row_i = a[i]
            row_r = a[r]
            head = row_i[r]
            for j in range(r + 1, n):
                row_i[j] = (row_i[j] * pivot - head * row_r[j]) // prev
            row_i[r] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def minor_determinant(m: IntMatrix, i: int | None = None) -> int:
    """Determinant of ``m`` with row and column ``i`` removed (0-based).

    Defaults to the last row/column.  A 1x1 input leaves the empty matrix,
    whose determinant is 1.
    """
    n = len(m)
    if n < 1:
        raise PreconditionError("matrix must have size >= 1")
    if i is None:
        i = n - 1
    if not (0 <= i < n):
        raise PreconditionError(f"removed index {i} out of range for size {n}")
    minor = [
        [row[j] for j in range(n) if j != i]
        for r, row in enumerate(m)
        if r != i
    ]
    return bareiss_determinant(minor)


def count_spanning_trees(g: Graph | Multigraph) -> int:
    """Number of spanning trees of a graph or multigraph (no self loops).

    Equal to any principal minor determinant of the Laplacian; 0 iff the
    input is disconnected, 1 for a single node.  Memoized per instance.
    """
    cached = g._tree_count
    if cached is None:
        cached = minor_determinant(laplacian(g))
        g._tree_count = cached
    return cached
