"""Automorphism group generators and edge orbits.

The generator search is a nauty-style individualization-refinement
backtracking: prune with equitable (1-WL) partition refinement, detect
automorphisms against the leftmost discrete leaf, and skip target-cell
vertices already known to lie in the orbit of an explored vertex under
the stabilizer of the current path. No canonical form is computed; only
orbits are needed.

Edge equivalence classes are the orbits of the edge set under the group
generated by the returned permutations, computed by a union-find sweep
(union e with g(e) for every edge e and generator g, which connects
exactly the group orbits).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ContractError, ResourceError
from .graph import Graph

DEFAULT_SEARCH_CAP = 256
BRUTE_FORCE_CAP = 10


@dataclass(frozen=True)
class Permutation:
    """Bijection on 0..n-1; map[v] is the image of vertex v."""

    map: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.map) != list(range(len(self.map))):
            raise ContractError("permutation map is not a bijection")

    @property
    def n(self) -> int:
        return len(self.map)

    def __call__(self, v: int) -> int:
        return self.map[v]

    def apply_edge(self, edge: tuple[int, int]) -> tuple[int, int]:
        u, v = self.map[edge[0]], self.map[edge[1]]
        return (u, v) if u < v else (v, u)

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(v) == self(other(v))."""
        return Permutation(tuple(self.map[other.map[v]] for v in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for v, w in enumerate(self.map):
            inv[w] = v
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(self.map[v] == v for v in range(self.n))


def identity_permutation(n: int) -> Permutation:
    return Permutation(tuple(range(n)))


@dataclass(frozen=True)
class GeneratorSet:
    n: int
    generators: tuple[Permutation, ...]


def is_automorphism(g: Graph, perm: Permutation) -> bool:
    if perm.n != g.n:
        return False
    edge_set = set(g.edges)
    return all(perm.apply_edge(e) in edge_set for e in g.edges)


# ---------------------------------------------------------------------------
# Equitable partition refinement (1-WL restricted to an ordered partition)
# ---------------------------------------------------------------------------

def refine_partition(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.

    Repeatedly splits each cell by the tuple of neighbor counts into
    every current cell; sub-cells are ordered by their count signature.
    The result is idempotent and refines the input.
    """
    _check_partition(g.n, cells)
    cells = [sorted(c) for c in cells]
    while True:
        cell_of = {}
        for idx, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = idx
        k = len(cells)
        new_cells = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                counts = [0] * k
                for w in g.adjacency[v]:
                    counts[cell_of[w]] += 1
                groups.setdefault(tuple(counts), []).append(v)
            if len(groups) > 1:
                changed = True
            for sig in sorted(groups):
                new_cells.append(groups[sig])
        cells = new_cells
        if not changed:
            return cells


def _check_partition(n: int, cells) -> None:
    seen = set()
    for cell in cells:
        if not cell:
            raise ContractError("empty cell in partition")
        for v in cell:
            if not (0 <= v < n) or v in seen:
                raise ContractError(f"vertex {v} missing or repeated in partition")
            seen.add(v)
    if len(seen) != n:
        raise ContractError("partition does not cover all vertices")


# ---------------------------------------------------------------------------
# Generator search
# ---------------------------------------------------------------------------

def find_automorphism_generators(g: Graph, cap: int = DEFAULT_SEARCH_CAP) -> GeneratorSet:
    """Generators of Aut(g) via individualization-refinement backtracking."""
    if g.n > cap:
        raise ResourceError(f"graph has {g.n} vertices, search cap is {cap}")
    if g.n == 0:
        return GeneratorSet(n=0, generators=())

    gens: list[Permutation] = []
    first_leaf: list[int] | None = None
    edge_set = set(g.edges)

    def leaf_order(cells):
        return [cell[0] for cell in cells]

    def stabilizer_orbits(fixed: list[int]) -> list[int]:
        # union-find over vertices under generators fixing the whole path
        parent = list(range(g.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for perm in gens:
            if all(perm.map[v] == v for v in fixed):
                for v in range(g.n):
                    a, b = find(v), find(perm.map[v])
                    if a != b:
                        parent[b] = a
        return [find(v) for v in range(g.n)]

    def target_cell_index(cells) -> int:
        best = -1
        best_size = None
        for idx, cell in enumerate(cells):
            if len(cell) > 1 and (best_size is None or len(cell) < best_size):
                best, best_size = idx, len(cell)
        return best

    def search(cells, fixed: list[int]):
        nonlocal first_leaf
        cells = refine_partition(g, cells)
        if all(len(c) == 1 for c in cells):
            order = leaf_order(cells)
            if first_leaf is None:
                first_leaf = order
                return
            perm_map = [0] * g.n
            for src, dst in zip(first_leaf, order):
                perm_map[src] = dst
            cand = Permutation(tuple(perm_map))
            if not cand.is_identity() and all(
                cand.apply_edge(e) in edge_set for e in g.edges
            ):
                gens.append(cand)
            return
        idx = target_cell_index(cells)
        cell = cells[idx]
        explored: list[int] = []
        for v in cell:  # ascending label order
            if explored:
                roots = stabilizer_orbits(fixed)
                if any(roots[v] == roots[u] for u in explored):
                    continue
            explored.append(v)
            rest = [w for w in cell if w != v]
            child = cells[:idx] + [[v], rest] + cells[idx + 1:]
            search(child, fixed + [v])

    search([list(range(g.n))], [])
    return GeneratorSet(n=g.n, generators=tuple(gens))


def brute_force_automorphisms(g: Graph) -> list[Permutation]:
    """All adjacency-preserving bijections, by exhaustive backtracking.

    Independent oracle for the generator search: assigns images vertex
    by vertex, checking degree equality and adjacency consistency with
    previously assigned vertices. Hard-capped at n=10.
    """
    if g.n > BRUTE_FORCE_CAP:
        raise ResourceError(f"brute force capped at n={BRUTE_FORCE_CAP}, got {g.n}")
    if g.n == 0:
        return []

    degrees = [g.degree(v) for v in range(g.n)]
    found: list[Permutation] = []
    image = [-1] * g.n
    used = [False] * g.n

    def extend(v: int):
        if v == g.n:
            found.append(Permutation(tuple(image)))
            return
        for w in range(g.n):
            if used[w] or degrees[w] != degrees[v]:
                continue
            ok = True
            for u in range(v):
                if g.has_edge(u, v) != g.has_edge(image[u], w):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
                image[v] = -1

    extend(0)
    return found


# ---------------------------------------------------------------------------
# Orbits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeClassPartition:
    class_of: dict[tuple[int, int], int]
    classes: tuple[tuple[tuple[int, int], ...], ...]
    sizes: tuple[int, ...]
    representatives: tuple[tuple[int, int], ...]

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def to_json(self) -> str:
        payload = {
            "classes": [
                {
                    "id": k,
                    "size": self.sizes[k],
                    "representative": list(self.representatives[k]),
                    "edges": [list(e) for e in self.classes[k]],
                }
                for k in range(self.num_classes)
            ]
        }
        return json.dumps(payload, indent=2)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx
            return True
        return False


def _validate_generators(g: Graph, gens: GeneratorSet):
    if gens.n != g.n:
        raise ContractError(f"generator set is on {gens.n} vertices, graph has {g.n}")
    edge_set = set(g.edges)
    for idx, perm in enumerate(gens.generators):
        for e in g.edges:
            if perm.apply_edge(e) not in edge_set:
                raise ContractError(
                    f"generator {idx} does not preserve the edge set (edge {e})"
                )


def edge_equivalence_classes(g: Graph, gens: GeneratorSet) -> EdgeClassPartition:
    """Orbits of the edge set under the group generated by `gens`.

    A single union sweep over (edge, generator) pairs already yields the
    orbits of the generated group; the loop repeats until no merge
    happens anyway, which keeps the fixpoint property obvious.
    """
    _validate_generators(g, gens)
    uf = _UnionFind(g.edges)
    merged = True
    while merged:
        merged = False
        for perm in gens.generators:
            for e in g.edges:
                if uf.union(e, perm.apply_edge(e)):
                    merged = True
    buckets: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for e in g.edges:
        buckets.setdefault(uf.find(e), []).append(e)
    classes = sorted((sorted(edges) for edges in buckets.values()),
                     key=lambda c: c[0])
    class_of = {}
    for k, cls in enumerate(classes):
        for e in cls:
            class_of[e] = k
    return EdgeClassPartition(
        class_of=class_of,
        classes=tuple(tuple(c) for c in classes),
        sizes=tuple(len(c) for c in classes),
        representatives=tuple(c[0] for c in classes),
    )


def vertex_orbits(g: Graph, gens: GeneratorSet) -> list[list[int]]:
    """Vertex orbits of the generated group, cells ordered by minimum label."""
    _validate_generators(g, gens)
    uf = _UnionFind(range(g.n))
    for perm in gens.generators:
        for v in range(g.n):
            uf.union(v, perm.map[v])
    buckets: dict[int, list[int]] = {}
    for v in range(g.n):
        buckets.setdefault(uf.find(v), []).append(v)
    return sorted((sorted(c) for c in buckets.values()), key=lambda c: c[0])


def edge_classes_from_elements(g: Graph, elements: list[Permutation]) -> EdgeClassPartition:
    """Edge orbits under an explicit list of group elements (oracle path)."""
    return edge_equivalence_classes(
        g, GeneratorSet(n=g.n, generators=tuple(elements))
    )


def orbit_witness(g: Graph, gens: GeneratorSet,
                  source: tuple[int, int], target: tuple[int, int]) -> Permutation | None:
    """A composed group element mapping edge `source` to edge `target`.

    Breadth-first search over edge images, composing generators and
    their inverses; returns None if no witness exists.
    """
    source = tuple(sorted(source))
    target = tuple(sorted(target))
    frontier = {source: identity_permutation(g.n)}
    seen = {source}
    steps = list(gens.generators) + [p.inverse() for p in gens.generators]
    while frontier:
        nxt = {}
        for edge, word in frontier.items():
            if edge == target:
                return word
            for perm in steps:
                img = perm.apply_edge(edge)
                if img not in seen:
                    seen.add(img)
                    nxt[img] = perm.compose(word)
        frontier = nxt
    return None


__all__ = [
    "Permutation",
    "GeneratorSet",
    "EdgeClassPartition",
    "identity_permutation",
    "is_automorphism",
    "refine_partition",
    "find_automorphism_generators",
    "brute_force_automorphisms",
    "edge_equivalence_classes",
    "edge_classes_from_elements",
    "vertex_orbits",
    "orbit_witness",
]
