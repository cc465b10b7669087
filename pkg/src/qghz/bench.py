"""Benchmark the numba kernels against the pure-numpy fallback.

Times exact simulation and sampling of a compiled GHZ circuit on a line
topology under both kernel backends:

    python -m qghz.bench --qubits 18 --repeats 5
"""

from __future__ import annotations

import argparse
import time

from . import kernels
from .circuits import build_ghz, with_measurements
from .coupling import line_map
from .paths import create_path
from .simulator import run_exact, sample


def _time_backend(circuit, shots: int, repeats: int) -> tuple[float, float]:
    """(best run_exact seconds, best sample seconds) over ``repeats`` runs."""
    run_exact(circuit)  # warm up (JIT compile on the numba path)
    best_exact = min(_timed(lambda: run_exact(circuit)) for _ in range(repeats))
    best_sample = min(_timed(lambda: sample(circuit, shots, seed=1)) for _ in range(repeats))
    return best_exact, best_sample


def _timed(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--qubits", type=int, default=18, help="line-topology size (max 20)")
    parser.add_argument("--shots", type=int, default=8192)
    parser.add_argument("--repeats", type=int, default=5, help="best-of-N timing")
    args = parser.parse_args(argv)

    cmap = line_map(args.qubits)
    path = create_path(cmap, 0, args.qubits)
    circuit = with_measurements(build_ghz(cmap, path), path.involved())
    print(f"GHZ on a {args.qubits}-qubit line: {len(circuit.gates)} gates, "
          f"2^{args.qubits} amplitudes, {args.shots} shots")

    results = {}
    backends = ["numpy"] + (["numba"] if kernels.NUMBA_AVAILABLE else [])
    previous = kernels.active_backend()
    try:
        for backend in backends:
            kernels.set_backend(backend)
            results[backend] = _time_backend(circuit, args.shots, args.repeats)
            exact_s, sample_s = results[backend]
            print(f"{backend:>6}: run_exact {exact_s * 1e3:8.2f} ms   sample {sample_s * 1e3:8.2f} ms")
    finally:
        kernels.set_backend(previous)

    if "numba" in results:
        speedup = results["numpy"][0] / results["numba"][0]
        print(f"numba speedup on run_exact: {speedup:.2f}x")
    else:
        print("numba not available; only the numpy path was measured")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
