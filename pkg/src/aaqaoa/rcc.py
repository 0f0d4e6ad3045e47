"""Reverse causal cone coverage: distance-p balls around measured edges.

At ansatz depth p, the expectation of a ZZ term on an edge only depends
on the subgraph induced by vertices within graph distance p of the
edge's endpoints. This module computes those balls, the combined
coverage of a representative-edge set, and the minimal depth at which
the whole graph is covered.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .errors import ContractError
from .graph import Graph, is_connected


@dataclass(frozen=True)
class RccReport:
    p: int
    covered: frozenset[int]
    uncovered: frozenset[int]
    per_edge: dict[tuple[int, int], frozenset[int]]

    def to_json(self) -> str:
        return json.dumps(
            {
                "p": self.p,
                "covered": sorted(self.covered),
                "uncovered": sorted(self.uncovered),
            },
            indent=2,
        )


def ball_around(g: Graph, sources, p: int) -> frozenset[int]:
    """Vertices at graph distance <= p from any source vertex (BFS)."""
    dist = {v: 0 for v in sources}
    queue = deque(sources)
    while queue:
        v = queue.popleft()
        if dist[v] == p:
            continue
        for w in g.adjacency[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return frozenset(dist)


def rcc_ball(g: Graph, edge: tuple[int, int], p: int) -> frozenset[int]:
    """Distance-p ball around both endpoints of an edge of g."""
    if p < 1:
        raise ContractError(f"depth must be >= 1, got {p}")
    u, v = min(edge), max(edge)
    if not g.has_edge(u, v):
        raise ContractError(f"edge ({u},{v}) not in graph")
    return ball_around(g, (u, v), p)


def combined_coverage(g: Graph, reps, p: int) -> RccReport:
    """Union of the RCC balls of all representative edges at depth p."""
    reps = [tuple(sorted(e)) for e in reps]
    if not reps:
        raise ContractError("representative edge list is empty")
    per_edge = {e: rcc_ball(g, e, p) for e in reps}
    covered = frozenset().union(*per_edge.values())
    uncovered = frozenset(range(g.n)) - covered
    return RccReport(p=p, covered=covered, uncovered=uncovered, per_edge=per_edge)


def minimal_depth(g: Graph, reps) -> int:
    """Smallest p >= 1 whose combined coverage reaches every vertex."""
    if not is_connected(g):
        raise ContractError("graph is disconnected; full coverage is unreachable")
    p = 1
    while True:
        if not combined_coverage(g, reps, p).uncovered:
            return p
        p += 1


def minimal_depth_over_representatives(g: Graph, classes,
                                       max_combinations: int = 1_000_000
                                       ) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Best coverage depth over all per-class representative choices.

    The covered set depends on which edge represents each class, so the
    minimal depth does too (picking a different member can shave a
    layer). Exhausts the product of class choices and returns the
    smallest attainable depth with one witnessing representative set.
    """
    from itertools import product

    from .errors import ResourceError

    total = 1
    for cls in classes.classes:
        total *= len(cls)
        if total > max_combinations:
            raise ResourceError(
                f"more than {max_combinations} representative combinations"
            )
    best_depth = None
    best_reps = None
    for choice in product(*classes.classes):
        depth = minimal_depth(g, choice)
        if best_depth is None or depth < best_depth:
            best_depth, best_reps = depth, choice
            if best_depth == 1:
                break
    return best_depth, best_reps
