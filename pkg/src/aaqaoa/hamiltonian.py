"""QUBO matrices for unweighted MaxCut and their Ising Hamiltonians.

Two QUBO-to-Ising conventions are supported:

* ``maxcut``: per weighted edge (u,v,w) the Hamiltonian gains offset w/2
  and a ZZ coefficient of -w/2, so the energy of a computational basis
  state equals the cut value of the bitstring. No linear terms appear.
* ``adjacency``: the bare off-diagonal QUBO term w*x_u*x_v is converted
  via x = (1-z)/2, giving offset w/4, linear -w/4 on each endpoint and a
  ZZ coefficient of +w/4. A connected graph then has exactly n linear
  plus m quadratic terms, which is the V+E term-count bookkeeping used
  when comparing full against reduced Hamiltonians.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

from .automorphism import EdgeClassPartition
from .errors import ContractError
from .graph import Graph

CONVENTIONS = ("maxcut", "adjacency")


@dataclass(frozen=True)
class QuboMatrix:
    """Symmetric zero-diagonal matrix stored as upper-triangle entries."""

    n: int
    entries: dict[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        for (u, v), w in self.entries.items():
            if not (0 <= u < v < self.n):
                raise ContractError(f"QUBO entry ({u},{v}) not upper-triangular in range")
            if w < 0:
                raise ContractError(f"QUBO entry ({u},{v}) negative: {w}")

    def total_weight(self) -> float:
        return sum(self.entries.values())


@dataclass(frozen=True)
class IsingHamiltonian:
    n: int
    convention: str
    offset: float
    linear: dict[int, float]
    quadratic: dict[tuple[int, int], float]

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise ContractError(f"unknown convention {self.convention!r}")

    @property
    def total_terms(self) -> int:
        return len(self.linear) + len(self.quadratic)

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "convention": self.convention,
            "offset": self.offset,
            "linear": [{"q": q, "c": c} for q, c in sorted(self.linear.items())],
            "quadratic": [
                {"u": u, "v": v, "c": c}
                for (u, v), c in sorted(self.quadratic.items())
            ],
        }
        return json.dumps(payload, indent=2)

    @staticmethod
    def from_json(text: str) -> "IsingHamiltonian":
        data = json.loads(text)
        return IsingHamiltonian(
            n=data["n"],
            convention=data["convention"],
            offset=data["offset"],
            linear={item["q"]: item["c"] for item in data["linear"]},
            quadratic={(item["u"], item["v"]): item["c"] for item in data["quadratic"]},
        )


def build_full_qubo(g: Graph) -> QuboMatrix:
    """Unit entry per edge of the graph."""
    return QuboMatrix(n=g.n, entries={e: 1.0 for e in g.edges})


def build_reduced_qubo(g: Graph, classes: EdgeClassPartition) -> QuboMatrix:
    """One entry per class representative, valued at the class size."""
    class_edges = {e for cls in classes.classes for e in cls}
    if class_edges != set(g.edges):
        raise ContractError("edge class partition does not match the graph's edge set")
    entries = {
        rep: float(size)
        for rep, size in zip(classes.representatives, classes.sizes)
    }
    return QuboMatrix(n=g.n, entries=entries)


def qubo_to_ising(q: QuboMatrix, convention: str) -> IsingHamiltonian:
    if convention not in CONVENTIONS:
        raise ContractError(f"unknown convention {convention!r}")
    offset = 0.0
    linear: dict[int, float] = {}
    quadratic: dict[tuple[int, int], float] = {}
    for (u, v), w in sorted(q.entries.items()):
        if w == 0:
            continue
        if convention == "maxcut":
            offset += w / 2.0
            quadratic[(u, v)] = quadratic.get((u, v), 0.0) - w / 2.0
        else:
            offset += w / 4.0
            linear[u] = linear.get(u, 0.0) - w / 4.0
            linear[v] = linear.get(v, 0.0) - w / 4.0
            quadratic[(u, v)] = quadratic.get((u, v), 0.0) + w / 4.0
    linear = {qb: c for qb, c in linear.items() if c != 0.0}
    quadratic = {e: c for e, c in quadratic.items() if c != 0.0}
    return IsingHamiltonian(
        n=q.n, convention=convention, offset=offset,
        linear=linear, quadratic=quadratic,
    )


def full_hamiltonian(g: Graph, convention: str = "maxcut") -> IsingHamiltonian:
    return qubo_to_ising(build_full_qubo(g), convention)


def reduced_hamiltonian(g: Graph, classes: EdgeClassPartition,
                        convention: str = "maxcut") -> IsingHamiltonian:
    return qubo_to_ising(build_reduced_qubo(g, classes), convention)


def term_count(h: IsingHamiltonian) -> tuple[int, int, int]:
    """(linear, quadratic, total) counts of stored nonzero coefficients."""
    return len(h.linear), len(h.quadratic), h.total_terms


def percent_reduction(full_terms: int, reduced_terms: int) -> float:
    """100*(1 - reduced/full), rounded half-up to 2 decimals."""
    if full_terms <= 0:
        raise ContractError("full term count must be positive")
    value = Decimal(100) * (1 - Decimal(reduced_terms) / Decimal(full_terms))
    return float(value.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def reduction_percentage(full: IsingHamiltonian, red: IsingHamiltonian) -> float:
    if full.convention != red.convention:
        raise ContractError(
            f"convention mismatch: {full.convention} vs {red.convention}"
        )
    return percent_reduction(full.total_terms, red.total_terms)


def _spins(x: str, n: int):
    if len(x) != n:
        raise ContractError(f"bitstring length {len(x)} does not match n={n}")
    return [1 if ch == "0" else -1 for ch in x]


def energy(h: IsingHamiltonian, x: str) -> float:
    """Diagonal evaluation on a bitstring; bit 0 maps to spin +1."""
    z = _spins(x, h.n)
    total = h.offset
    for qb, c in h.linear.items():
        total += c * z[qb]
    for (u, v), c in h.quadratic.items():
        total += c * z[u] * z[v]
    return total


def cut_value(g: Graph, x: str) -> int:
    if len(x) != g.n:
        raise ContractError(f"bitstring length {len(x)} does not match n={g.n}")
    return sum(1 for u, v in g.edges if x[u] != x[v])
