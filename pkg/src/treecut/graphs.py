"""Graph, multigraph and partition types plus the structural operations on them.

Node ids are contiguous and 0-based internally.  All text formats and JSON
payloads use 1-based ids; the parse/serialize helpers in this module do the
shifting.  Instances are treated as immutable after construction, which makes
them safe to share across threads and lets expensive derived quantities (such
as spanning-tree counts) be cached on the instance.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import GraphParseError, PreconditionError

Edge = tuple[int, int]

GRAPH_FORMATS = ("edge-list", "adjacency-matrix")


class Graph:
    """Simple undirected graph on nodes ``0..n-1``.

    Edges are stored canonically: ``u < v`` within a pair, pairs sorted
    lexicographically.  Two equal graphs therefore serialize identically.
    """

    __slots__ = ("n", "edges", "_adjacency", "_tree_count")

    def __init__(self, n: int, edges: Iterable[Edge]):
        if n < 1:
            raise PreconditionError("a graph needs at least one node")
        seen: set[Edge] = set()
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"self loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise PreconditionError(f"duplicate edge ({e[0]}, {e[1]})")
            seen.add(e)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted(seen))
        self._adjacency: tuple[tuple[int, ...], ...] | None = None
        self._tree_count: int | None = None

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbor tuple per node, built lazily."""
        if self._adjacency is None:
            nbrs: list[list[int]] = [[] for _ in range(self.n)]
            for u, v in self.edges:
                nbrs[u].append(v)
                nbrs[v].append(u)
            self._adjacency = tuple(tuple(sorted(a)) for a in nbrs)
        return self._adjacency

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def to_json_dict(self) -> dict:
        """JSON form with 1-based ids: ``{"n": ..., "edges": [[u, v], ...]}``."""
        return {"n": self.n, "edges": [[u + 1, v + 1] for u, v in self.edges]}

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={len(self.edges)})"


class Multigraph:
    """Undirected multigraph on ``k`` nodes given by a symmetric multiplicity
    matrix with zero diagonal (no self loops)."""

    __slots__ = ("k", "mult", "_tree_count")

    def __init__(self, mult: Sequence[Sequence[int]]):
        k = len(mult)
        if k < 1:
            raise PreconditionError("a multigraph needs at least one node")
        rows = tuple(tuple(int(x) for x in row) for row in mult)
        for i, row in enumerate(rows):
            if len(row) != k:
                raise PreconditionError("multiplicity matrix must be square")
            if row[i] != 0:
                raise PreconditionError(f"self loop multiplicity at node {i}")
            for j, m in enumerate(row):
                if m < 0:
                    raise PreconditionError(f"negative multiplicity at ({i}, {j})")
                if rows[j][i] != m:
                    raise PreconditionError("multiplicity matrix must be symmetric")
        self.k = k
        self.mult = rows
        self._tree_count: int | None = None

    @property
    def edge_total(self) -> int:
        """Total number of edges counted with multiplicity."""
        return sum(sum(row) for row in self.mult) // 2

    def to_json_dict(self) -> dict:
        return {"k": self.k, "mult": [list(row) for row in self.mult]}

    def __eq__(self, other) -> bool:
        return isinstance(other, Multigraph) and self.mult == other.mult

    def __hash__(self) -> int:
        return hash(self.mult)

    def __repr__(self) -> str:
        return f"Multigraph(k={self.k})"


class Partition:
    """Unordered partition of ``0..n-1`` into nonempty disjoint blocks.

    Canonical form: ids ascending within a block, blocks ordered by their
    minimum id.  Equality of canonical forms defines partition identity, so
    block labels carry no meaning.
    """

    __slots__ = ("blocks",)

    def __init__(self, blocks: Iterable[Iterable[int]]):
        canon = []
        for b in blocks:
            block = tuple(sorted(b))
            if not block:
                raise PreconditionError("empty block in partition")
            canon.append(block)
        if not canon:
            raise PreconditionError("partition needs at least one block")
        flat = [x for b in canon for x in b]
        if len(set(flat)) != len(flat):
            raise PreconditionError("blocks are not disjoint")
        if set(flat) != set(range(len(flat))):
            raise PreconditionError("blocks must cover a contiguous 0-based id range")
        self.blocks: tuple[tuple[int, ...], ...] = tuple(sorted(canon))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls([i] for i in range(n))

    @classmethod
    def whole(cls, n: int) -> "Partition":
        return cls([range(n)])

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    def block_of(self) -> list[int]:
        """Map node id to the index of its canonical block."""
        owner = [0] * self.n
        for i, b in enumerate(self.blocks):
            for x in b:
                owner[x] = i
        return owner

    def to_json_dict(self) -> dict:
        return {"blocks": [[x + 1 for x in b] for b in self.blocks]}

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.blocks == other.blocks

    def __lt__(self, other: "Partition") -> bool:
        return self.blocks < other.blocks

    def __hash__(self) -> int:
        return hash(self.blocks)

    def __repr__(self) -> str:
        return f"Partition({list(map(list, self.blocks))})"


# ---------------------------------------------------------------------------
# structural operations


def is_connected(g: Graph | Multigraph) -> bool:
    """True iff every node is reachable from node 0 (single node counts)."""
    if isinstance(g, Multigraph):
        n = g.k
        nbrs = [
            tuple(j for j in range(n) if g.mult[i][j] > 0)
            for i in range(n)
        ]
    else:
        n = g.n
        nbrs = g.adjacency
    seen = bytearray(n)
    seen[0] = 1
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for v in nbrs[u]:
            if not seen[v]:
                seen[v] = 1
                count += 1
                stack.append(v)
    return count == n


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by ``nodes``, relabeled to ``0..|S|-1`` by ascending
    original id.  Returns the subgraph and the relabeling map (new id ->
    original id)."""
    sel = sorted(set(nodes))
    if not sel:
        raise PreconditionError("induced subgraph of an empty node set")
    if sel[0] < 0 or sel[-1] >= g.n:
        raise PreconditionError(f"node id out of range for n={g.n}")
    index = {orig: i for i, orig in enumerate(sel)}
    members = set(sel)
    edges = [
        (index[u], index[v]) for u, v in g.edges if u in members and v in members
    ]
    return Graph(len(sel), edges), tuple(sel)


def boundary_edges(g: Graph, s: Iterable[int]) -> tuple[Edge, ...]:
    """All edges of ``g`` with exactly one endpoint in ``s``."""
    sel = set(s)
    if not sel:
        raise PreconditionError("boundary of an empty set")
    if any(x < 0 or x >= g.n for x in sel):
        raise PreconditionError(f"node id out of range for n={g.n}")
    if len(sel) == g.n:
        raise PreconditionError("boundary of the full node set")
    return tuple(e for e in g.edges if (e[0] in sel) != (e[1] in sel))


def contract(g: Graph, c: Partition) -> Multigraph:
    """Collapse each block of ``c`` to one node.

    Edges between two blocks become multiplicities between the corresponding
    nodes; edges inside a block are dropped (they would be self loops, which
    the multigraph type excludes).
    """
    if c.n != g.n:
        raise PreconditionError(
            f"partition covers {c.n} nodes but the graph has {g.n}"
        )
    owner = c.block_of()
    k = c.k
    mult = [[0] * k for _ in range(k)]
    for u, v in g.edges:
        bu, bv = owner[u], owner[v]
        if bu != bv:
            mult[bu][bv] += 1
            mult[bv][bu] += 1
    return Multigraph(mult)


def laplacian(g: Graph | Multigraph) -> list[list[int]]:
    """Unnormalized Laplacian: diagonal of (weighted) degrees minus the
    (multiplicity-weighted) adjacency matrix.  Rows and columns sum to zero."""
    if isinstance(g, Multigraph):
        k = g.k
        lap = [[-g.mult[i][j] for j in range(k)] for i in range(k)]
        for i in range(k):
            lap[i][i] = sum(g.mult[i])
        return lap
    n = g.n
    lap = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        lap[u][v] -= 1
        lap[v][u] -= 1
        lap[u][u] += 1
        lap[v][v] += 1
    return lap


# ---------------------------------------------------------------------------
# text formats (1-based ids)


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format.

    Optional first line ``n <count>`` declares the node count; otherwise it is
    the largest id seen.  One edge ``u v`` per line, 1-based, whitespace
    separated.  ``#`` starts a comment.
    """
    declared: int | None = None
    edges: list[Edge] = []
    first = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if first and parts[0] == "n":
            first = False
            if len(parts) != 2:
                raise GraphParseError(f"line {lineno}: malformed header {raw!r}")
            try:
                declared = int(parts[1])
            except ValueError:
                raise GraphParseError(f"line {lineno}: malformed header {raw!r}") from None
            if declared < 1:
                raise GraphParseError(f"line {lineno}: node count must be positive")
            continue
        first = False
        if len(parts) != 2:
            raise GraphParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: non-integer id in {raw!r}") from None
        if u < 1 or v < 1:
            raise GraphParseError(f"line {lineno}: ids are 1-based, got {raw!r}")
        if u == v:
            raise GraphParseError(f"line {lineno}: self loop at node {u}")
        edges.append((u - 1, v - 1))
    if declared is None:
        if not edges:
            raise GraphParseError("empty edge list without an 'n <count>' header")
        declared = 1 + max(max(e) for e in edges)
    try:
        return Graph(declared, edges)
    except PreconditionError as exc:
        raise GraphParseError(str(exc)) from None


def parse_adjacency_matrix(text: str) -> Graph:
    """Parse an n x n matrix of 0/1 entries, comma or whitespace separated.
    Must be symmetric with a zero diagonal."""
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        entries = line.replace(",", " ").split()
        try:
            row = [int(x) for x in entries]
        except ValueError:
            raise GraphParseError(f"line {lineno}: non-integer entry in {raw!r}") from None
        if any(x not in (0, 1) for x in row):
            raise GraphParseError(f"line {lineno}: adjacency entries must be 0 or 1")
        rows.append(row)
    n = len(rows)
    if n == 0:
        raise GraphParseError("empty adjacency matrix")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise GraphParseError(f"row {i + 1} has {len(row)} entries, expected {n}")
        if row[i] != 0:
            raise GraphParseError(f"nonzero diagonal at node {i + 1}")
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise GraphParseError(f"asymmetric adjacency at ({i + 1}, {j + 1})")
            if rows[i][j]:
                edges.append((i, j))
    return Graph(n, edges)


def load_graph(text: str, format: str = "edge-list") -> Graph:
    """Parse a graph document in one of the supported formats."""
    if format == "edge-list":
        return parse_edge_list(text)
    if format == "adjacency-matrix":
        return parse_adjacency_matrix(text)
    raise GraphParseError(f"unknown graph format {format!r}")


def serialize_edge_list(g: Graph) -> str:
    """Canonical edge-list document; parsing it back yields an equal graph."""
    lines = [f"n {g.n}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_partition(text: str, n: int) -> Partition:
    """Parse a partition document: one block per line, 1-based ids,
    whitespace separated.  Must cover ``1..n`` disjointly."""
    blocks: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            ids = [int(x) for x in line.split()]
        except ValueError:
            raise GraphParseError(f"line {lineno}: non-integer id in {raw!r}") from None
        if any(x < 1 or x > n for x in ids):
            raise GraphParseError(f"line {lineno}: id out of range 1..{n}")
        blocks.append([x - 1 for x in ids])
    if not blocks:
        raise GraphParseError("empty partition document")
    try:
        c = Partition(blocks)
    except PreconditionError as exc:
        raise GraphParseError(str(exc)) from None
    if c.n != n:
        raise GraphParseError(f"partition covers {c.n} nodes but the graph has {n}")
    return c


def serialize_partition(c: Partition) -> str:
    return "\n".join(" ".join(str(x + 1) for x in b) for b in c.blocks) + "\n"
