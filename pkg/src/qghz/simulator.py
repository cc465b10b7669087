"""Exact state-vector simulation, shot sampling, and the noisy parity oracle.

States start at |0...0> and evolve under h/x/cnot through the kernels
module (numba or numpy backend, identical results). Measurement happens
once at circuit end: ``sample`` draws from the exact joint distribution of
the measured qubits, marginalized over the rest.

Randomness comes from numpy's PCG64 generator seeded through SeedSequence,
so every histogram is reproducible bit-for-bit across platforms for a given
integer seed. Derived per-repetition seeds use SeedSequence.spawn.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .circuits import CNOT, H, MEASURE, X, Circuit, Gate

MAX_SIMULATED_QUBITS = 20

Histogram = dict[str, int]


@dataclass
class StateVector:
    num_qubits: int
    amplitudes: np.ndarray

    def norm_squared(self) -> float:
        return float(np.sum(self.amplitudes.real**2 + self.amplitudes.imag**2))


def zero_state(num_qubits: int) -> StateVector:
    """|0...0>: amplitude 1 at index 0."""
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


def _apply_inplace(amps: np.ndarray, gate: Gate) -> None:
    if gate.kind == H:
        kernels.apply_h(amps, gate.operands[0])
    elif gate.kind == X:
        kernels.apply_x(amps, gate.operands[0])
    elif gate.kind == CNOT:
        kernels.apply_cnot(amps, gate.operands[0], gate.operands[1])
    else:
        raise ValueError(f"{gate.kind} is not a unitary gate")


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Return the state after one unitary gate; the input is untouched."""
    qubits = gate.operands if gate.kind != MEASURE else gate.operands[:1]
    for q in qubits:
        if not (0 <= q < state.num_qubits):
            raise IndexError(f"qubit {q} out of range [0, {state.num_qubits})")
    amps = state.amplitudes.copy()
    _apply_inplace(amps, gate)
    return StateVector(state.num_qubits, amps)


def run_exact(circuit: Circuit, max_qubits: int = MAX_SIMULATED_QUBITS) -> StateVector:
    """State after all non-measure gates, starting from |0...0>."""
    if circuit.width > max_qubits:
        raise ValueError(f"circuit width {circuit.width} exceeds the simulator maximum of {max_qubits}")
    state = zero_state(circuit.width)
    for gate in circuit.gates:
        if gate.kind != MEASURE:
            _apply_inplace(state.amplitudes, gate)
    return state


def exact_distribution(circuit: Circuit) -> dict[str, float]:
    """Exact outcome probabilities over the measured qubits (zeros dropped)."""
    if not circuit.measured_qubits:
        raise ValueError("circuit declares no measured qubits")
    state = run_exact(circuit)
    probs = kernels.marginal_probs(state.amplitudes, circuit.measured_qubits)
    k = len(circuit.measured_qubits)
    return {format(i, f"0{k}b"): float(p) for i, p in enumerate(probs) if p > 0.0}


def sample(circuit: Circuit, shots: int, seed) -> Histogram:
    """Histogram of ``shots`` independent measurements of the circuit.

    Keys are bitstrings in classical-bit order (first measured qubit
    leftmost); only observed outcomes appear. Deterministic given the seed.
    """
    if not circuit.measured_qubits:
        raise ValueError("circuit declares no measured qubits")
    if shots <= 0:
        raise ValueError(f"shots must be positive, got {shots}")
    state = run_exact(circuit)
    probs = kernels.marginal_probs(state.amplitudes, circuit.measured_qubits)
    probs = probs / probs.sum()
    rng = np.random.Generator(np.random.PCG64(seed))
    counts = rng.multinomial(shots, probs)
    k = len(circuit.measured_qubits)
    return {format(i, f"0{k}b"): int(c) for i, c in enumerate(counts) if c > 0}


@dataclass(frozen=True)
class NoisySampleConfig:
    """Noise rate and encoded string of the classical parity-oracle sampler."""

    eta: float
    a_string: str

    def __post_init__(self):
        if not (0.0 <= self.eta < 0.5):
            raise ValueError(f"eta must lie in [0, 0.5), got {self.eta}")
        if not self.a_string or set(self.a_string) - {"0", "1"}:
            raise ValueError(f"a_string must be a nonempty string of 0/1, got {self.a_string!r}")


def sample_noisy_oracle(config: NoisySampleConfig, queries: int, seed) -> list[tuple[str, int]]:
    """Draw (query_bits, result_bit) pairs from the noisy oracle mixture.

    Each query independently yields, with probability 1 - eta, one of
    (0^n, 0) or (a, 1) with equal odds; with probability eta one of
    (0^n, 1) or (a, 0) with equal odds. So the result bit is uniform
    regardless of eta, and among result-1 samples the query equals a with
    probability 1 - eta.
    """
    if queries <= 0:
        raise ValueError(f"queries must be positive, got {queries}")
    rng = np.random.Generator(np.random.PCG64(seed))
    noisy = rng.random(queries) < config.eta
    carries_a = rng.integers(0, 2, size=queries, dtype=np.int64)
    zeros = "0" * len(config.a_string)
    out = []
    for flip, bit in zip(noisy, carries_a):
        query = config.a_string if bit else zeros
        result = int(bit) ^ int(flip)
        out.append((query, result))
    return out


def spawn_seeds(seed, count: int) -> list[np.random.SeedSequence]:
    """Independent child seeds for repetition loops, derived deterministically."""
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return seed.spawn(count)
