"""Immutable undirected graph plus deterministic tree/star generators and edge-list I/O.

Vertices are labelled 0..n-1. Edges are stored normalized as (u, v) with
u < v and sorted lexicographically, so two graphs are equal iff their
(n, edges) pairs are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContractError, ParseError, ResourceError

# Generators refuse anything bigger than this: the downstream statevector
# simulator cost is 2^n, so huge instances are never useful here.
DEFAULT_VERTEX_CAP = 64


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_set

    @property
    def _edge_set(self):
        # cached on first use; object.__setattr__ because the dataclass is frozen
        cached = self.__dict__.get("_edge_set_cache")
        if cached is None:
            cached = frozenset(self.edges)
            object.__setattr__(self, "_edge_set_cache", cached)
        return cached

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


def make_graph(n: int, edges) -> Graph:
    """Validate, normalize and freeze an edge list into a Graph."""
    if n < 0:
        raise ContractError(f"vertex count must be nonnegative, got {n}")
    normalized = set()
    for u, v in edges:
        if u == v:
            raise ContractError(f"self-loop ({u},{v}) not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise ContractError(f"edge ({u},{v}) out of range for n={n}")
        if u > v:
            u, v = v, u
        normalized.add((u, v))
    edge_tuple = tuple(sorted(normalized))
    adj = [[] for _ in range(n)]
    for u, v in edge_tuple:
        adj[u].append(v)
        adj[v].append(u)
    adjacency = tuple(tuple(sorted(neigh)) for neigh in adj)
    return Graph(n=n, edges=edge_tuple, adjacency=adjacency)


def _check_cap(n: int, cap: int):
    if n > cap:
        raise ResourceError(f"requested {n} vertices exceeds generator cap {cap}")


def full_rary_tree(r: int, n: int, cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    """Breadth-first labelled r-ary tree on n vertices.

    Vertex i has children r*i+1 .. r*i+r, clipped at n. The last level
    may be partially filled, so branch depths can be uneven.
    """
    if r < 2:
        raise ContractError(f"branching factor must be >= 2, got {r}")
    if n < 1:
        raise ContractError(f"vertex count must be >= 1, got {n}")
    _check_cap(n, cap)
    edges = []
    for i in range(n):
        for k in range(1, r + 1):
            child = r * i + k
            if child < n:
                edges.append((i, child))
    return make_graph(n, edges)


def balanced_tree(r: int, h: int, cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    """Perfect r-ary tree of height h: every internal vertex has r children,
    all leaves at depth h. Uses the same breadth-first labelling as
    full_rary_tree."""
    if r < 2:
        raise ContractError(f"branching factor must be >= 2, got {r}")
    if h < 1:
        raise ContractError(f"height must be >= 1, got {h}")
    n = (r ** (h + 1) - 1) // (r - 1)
    _check_cap(n, cap)
    return full_rary_tree(r, n, cap=cap)


def star_graph(n: int, cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    """Hub vertex 0 adjacent to all of 1..n-1."""
    if n < 2:
        raise ContractError(f"star graph needs at least 2 vertices, got {n}")
    _check_cap(n, cap)
    return make_graph(n, [(0, v) for v in range(1, n)])


def path_graph(n: int, cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    """Path 0-1-...-(n-1)."""
    if n < 1:
        raise ContractError(f"path needs at least 1 vertex, got {n}")
    _check_cap(n, cap)
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list text format.

    First non-comment line is "n m"; then m lines "u v" with 0-based
    labels. Lines starting with '#' are ignored.
    """
    header = None
    edges = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two fields, got {len(parts)}", line_no)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer field in {line!r}", line_no) from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError("header counts must be nonnegative", line_no)
            header = (a, b)
            continue
        n = header[0]
        if a == b:
            raise ParseError(f"self-loop ({a},{b})", line_no)
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"vertex label out of range for n={n}", line_no)
        edges.append((a, b))
    if header is None:
        raise ParseError("missing header line 'n m'")
    n, m = header
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}")
    g = make_graph(n, edges)
    if g.m != m:
        raise ParseError(f"duplicate edges: {m} declared, {g.m} distinct")
    return g


def serialize_edge_list(g: Graph) -> str:
    """Inverse of parse_edge_list: "n m" header then sorted edge lines."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by `vertices`, relabelled 0..k-1 in ascending order.

    Returns the subgraph and the old-label -> new-label map.
    """
    ordered = sorted(set(vertices))
    relabel = {v: i for i, v in enumerate(ordered)}
    edges = [
        (relabel[u], relabel[v])
        for u, v in g.edges
        if u in relabel and v in relabel
    ]
    return make_graph(len(ordered), edges), relabel
