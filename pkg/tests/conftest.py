from __future__ import annotations

import numpy as np
import pytest

from qghz.coupling import CouplingMap


def random_digraph(rng: np.random.Generator, max_qubits: int = 10) -> CouplingMap:
    """Random directed graph with arbitrary edge density (may be disconnected)."""
    n = int(rng.integers(1, max_qubits + 1))
    edges = []
    density = rng.random()
    for c in range(n):
        for t in range(n):
            if c != t and rng.random() < density:
                edges.append((c, t))
    return CouplingMap(n, edges)


def random_connected_map(rng: np.random.Generator, max_qubits: int = 16) -> CouplingMap:
    """Weakly-connected random map: a random spanning tree plus extra edges.

    Every edge gets a random direction, mirroring how real devices fix CNOT
    polarity per coupling.
    """
    n = int(rng.integers(2, max_qubits + 1))
    undirected: set[tuple[int, int]] = set()
    order = rng.permutation(n)
    for i in range(1, n):
        a = int(order[i])
        b = int(order[int(rng.integers(0, i))])
        undirected.add((min(a, b), max(a, b)))
    for _ in range(int(rng.integers(0, n))):
        a, b = int(rng.integers(0, n)), int(rng.integers(0, n))
        if a != b:
            undirected.add((min(a, b), max(a, b)))
    edges = [(a, b) if rng.random() < 0.5 else (b, a) for a, b in undirected]
    return CouplingMap(n, edges)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(20260809))
