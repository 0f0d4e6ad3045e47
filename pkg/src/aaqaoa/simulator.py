"""Dense statevector simulation of the QAOA ansatz.

Basis convention: bit i of the amplitude index is the value of qubit i,
so bitstring text indexes qubits left to right (character u of a sampled
string is vertex u's partition bit).
"""

from __future__ import annotations

import struct
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .automorphism import EdgeClassPartition, Permutation
from .errors import ContractError, ResourceError
from .graph import Graph, induced_subgraph
from .hamiltonian import IsingHamiltonian, full_hamiltonian
from .rcc import ball_around

DEFAULT_QUBIT_CAP = 26  # 2^26 complex doubles ~ 1 GiB


@dataclass
class StateVector:
    n: int
    amps: np.ndarray

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amps.copy())

    def norm_error(self) -> float:
        return abs(1.0 - float(np.sum(np.abs(self.amps) ** 2)))


@dataclass(frozen=True)
class AnsatzParams:
    betas: tuple[float, ...]
    gammas: tuple[float, ...]

    def __post_init__(self):
        if len(self.betas) != len(self.gammas) or not self.betas:
            raise ContractError("betas and gammas must have equal length p >= 1")

    @property
    def p(self) -> int:
        return len(self.betas)

    @staticmethod
    def from_vector(theta, p: int) -> "AnsatzParams":
        theta = list(theta)
        if len(theta) != 2 * p:
            raise ContractError(f"expected {2 * p} parameters, got {len(theta)}")
        return AnsatzParams(betas=tuple(theta[:p]), gammas=tuple(theta[p:]))


def init_plus(n: int, cap: int = DEFAULT_QUBIT_CAP) -> StateVector:
    if n < 1:
        raise ContractError(f"need at least 1 qubit, got {n}")
    if n > cap:
        need_gib = (1 << n) * 16 / 2**30
        raise ResourceError(
            f"{n} qubits exceeds cap {cap} (statevector would need {need_gib:.1f} GiB)"
        )
    amps = np.full(1 << n, 2.0 ** (-n / 2.0), dtype=np.complex128)
    return StateVector(n, amps)


def energy_diagonal(h: IsingHamiltonian) -> np.ndarray:
    """Energies of all 2^n basis states as a float array."""
    idx = np.arange(1 << h.n, dtype=np.int64)
    diag = np.full(1 << h.n, h.offset, dtype=np.float64)
    for q, c in h.linear.items():
        diag += c * (1.0 - 2.0 * ((idx >> q) & 1))
    for (u, v), c in h.quadratic.items():
        zu = 1.0 - 2.0 * ((idx >> u) & 1)
        zv = 1.0 - 2.0 * ((idx >> v) & 1)
        diag += c * zu * zv
    return diag


def apply_phase_separator(s: StateVector, h: IsingHamiltonian,
                          gamma: float) -> StateVector:
    if h.n != s.n:
        raise ContractError(f"Hamiltonian on {h.n} qubits, state on {s.n}")
    return StateVector(s.n, s.amps * np.exp(-1j * gamma * energy_diagonal(h)))


def apply_mixer(s: StateVector, beta: float) -> StateVector:
    """e^{-i beta X} on every qubit."""
    amps = s.amps.copy()
    c, sn = np.cos(beta), np.sin(beta)
    for j in range(s.n):
        view = amps.reshape(1 << (s.n - 1 - j), 2, 1 << j)
        a = view[:, 0, :].copy()
        b = view[:, 1, :]
        view[:, 0, :] = c * a - 1j * sn * b
        view[:, 1, :] = c * b - 1j * sn * a
    return StateVector(s.n, amps)


def build_qaoa_state(h_ansatz: IsingHamiltonian, params: AnsatzParams,
                     cap: int = DEFAULT_QUBIT_CAP) -> StateVector:
    """Alternating phase-separator / mixer layers on |+>^n."""
    s = init_plus(h_ansatz.n, cap=cap)
    diag = energy_diagonal(h_ansatz)
    amps = s.amps
    for beta, gamma in zip(params.betas, params.gammas):
        amps = amps * np.exp(-1j * gamma * diag)
        s = apply_mixer(StateVector(s.n, amps), beta)
        amps = s.amps
    return s


def permute_statevector(s: StateVector, perm: Permutation) -> StateVector:
    """Permute qubit positions: amplitude of |x> moves to |a(x)>."""
    if perm.n != s.n:
        raise ContractError(f"permutation on {perm.n} vertices, state on {s.n} qubits")
    idx = np.arange(1 << s.n, dtype=np.int64)
    target = np.zeros_like(idx)
    for i in range(s.n):
        target |= ((idx >> i) & 1) << perm.map[i]
    out = np.empty_like(s.amps)
    out[target] = s.amps
    return StateVector(s.n, out)


def pauli_z_expectation(s: StateVector, qubits) -> float:
    """<prod_{q in qubits} Z_q> on the state."""
    qubits = sorted(set(qubits))
    if not qubits:
        raise ContractError("qubit set must be nonempty")
    if qubits[0] < 0 or qubits[-1] >= s.n:
        raise ContractError(f"qubit out of range for n={s.n}: {qubits}")
    probs = np.abs(s.amps) ** 2
    return float(np.dot(probs, _sign_mask(s.n, tuple(qubits))))


def expectation(s: StateVector, h: IsingHamiltonian,
                mode: str = "per_term") -> float:
    """<H> on the state.

    per_term iterates the stored terms (cost proportional to the term
    count times 2^n); fused evaluates the precomputed energy diagonal in
    a single pass.
    """
    if h.n != s.n:
        raise ContractError(f"Hamiltonian on {h.n} qubits, state on {s.n}")
    if mode == "fused":
        probs = np.abs(s.amps) ** 2
        return float(np.dot(probs, energy_diagonal(h)))
    if mode != "per_term":
        raise ContractError(f"unknown expectation mode {mode!r}")
    probs = np.abs(s.amps) ** 2
    total = h.offset
    for q, c in h.linear.items():
        total += c * float(np.dot(probs, _sign_mask(s.n, (q,))))
    for (u, v), c in h.quadratic.items():
        total += c * float(np.dot(probs, _sign_mask(s.n, (u, v))))
    return total


# Parity sign masks are reused heavily inside optimization loops; cache
# them for moderate sizes (8 MiB per mask at the 20-qubit cap).
_MASK_CACHE_QUBIT_CAP = 20
_MASK_CACHE_MAX_ENTRIES = 64
_mask_cache: dict[tuple[int, ...], np.ndarray] = {}


def _sign_mask(n: int, qubits: tuple[int, ...]) -> np.ndarray:
    """(-1)^(parity of the given bits) over all 2^n basis indices."""
    key = (n,) + tuple(sorted(qubits))
    mask = _mask_cache.get(key)
    if mask is not None:
        return mask
    mask = np.ones(1 << n, dtype=np.float64)
    for q in qubits:
        mask.reshape(-1, 2 << q)[:, 1 << q:] *= -1.0
    if n <= _MASK_CACHE_QUBIT_CAP:
        if len(_mask_cache) >= _MASK_CACHE_MAX_ENTRIES:
            _mask_cache.clear()
        _mask_cache[key] = mask
    return mask


def index_to_bitstring(index: int, n: int) -> str:
    return "".join("1" if (index >> i) & 1 else "0" for i in range(n))


def sample_bitstrings(s: StateVector, shots: int, seed: int) -> Counter:
    """Seeded i.i.d. samples from the measurement distribution."""
    if shots < 1:
        raise ContractError(f"shots must be >= 1, got {shots}")
    probs = np.abs(s.amps) ** 2
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    draws = rng.choice(len(probs), size=shots, p=probs)
    counts = Counter()
    for index, mult in zip(*np.unique(draws, return_counts=True)):
        counts[index_to_bitstring(int(index), s.n)] = int(mult)
    return counts


def verify_orbit_symmetry(s: StateVector, classes: EdgeClassPartition) -> float:
    """Max over classes of the spread between member and representative <ZZ>."""
    worst = 0.0
    for cls, rep in zip(classes.classes, classes.representatives):
        if rep and (rep[0] >= s.n or rep[1] >= s.n):
            raise ContractError("edge classes refer to qubits beyond the state")
        ref = pauli_z_expectation(s, rep)
        for edge in cls:
            worst = max(worst, abs(pauli_z_expectation(s, edge) - ref))
    return worst


def expectation_via_rcc(g: Graph, h_measure: IsingHamiltonian,
                        params: AnsatzParams,
                        ansatz_convention: str = "maxcut",
                        cap: int = DEFAULT_QUBIT_CAP) -> float:
    """<H_measure> evaluated term by term on each term's causal-cone subgraph.

    For every stored term, only the subgraph induced by vertices within
    distance p of the term's support can influence its expectation, so
    the term is evaluated on the induced-subgraph ansatz of that ball
    instead of the full 2^n statevector. Exact for any depth p.
    """
    if h_measure.n != g.n:
        raise ContractError(f"Hamiltonian on {h_measure.n} qubits, graph on {g.n}")
    total = h_measure.offset
    terms = [((q,), c) for q, c in h_measure.linear.items()]
    terms += [(e, c) for e, c in h_measure.quadratic.items()]
    for support, coeff in terms:
        ball = ball_around(g, support, params.p)
        sub, relabel = induced_subgraph(g, ball)
        sub_h = full_hamiltonian(sub, ansatz_convention)
        sub_state = build_qaoa_state(sub_h, params, cap=cap)
        total += coeff * pauli_z_expectation(
            sub_state, tuple(relabel[v] for v in support)
        )
    return total


def dump_state(s: StateVector, path) -> None:
    """Debug dump: 8-byte little-endian qubit count, then complex doubles."""
    with open(path, "wb") as fh:
        fh.write(struct.pack("<Q", s.n))
        fh.write(s.amps.astype("<c16").tobytes())


def load_state(path) -> StateVector:
    with open(path, "rb") as fh:
        (n,) = struct.unpack("<Q", fh.read(8))
        amps = np.frombuffer(fh.read(), dtype="<c16").astype(np.complex128)
    if len(amps) != 1 << n:
        raise ContractError(f"state file claims {n} qubits but holds {len(amps)} amplitudes")
    return StateVector(int(n), amps)
