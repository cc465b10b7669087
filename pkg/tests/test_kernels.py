from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

from qghz import kernels

PROBE = "import qghz.kernels as k; print(k.active_backend())"


class TestBackendSelection:
    def test_default_prefers_numba_when_available(self):
        result = subprocess.run(
            [sys.executable, "-c", PROBE],
            capture_output=True, text=True, env={**os.environ, "QGHZ_KERNELS": ""},
        )
        assert result.stdout.strip() == ("numba" if kernels.NUMBA_AVAILABLE else "numpy")

    def test_env_flag_forces_numpy_fallback(self):
        result = subprocess.run(
            [sys.executable, "-c", PROBE],
            capture_output=True, text=True, env={**os.environ, "QGHZ_KERNELS": "numpy"},
        )
        assert result.stdout.strip() == "numpy"

    def test_env_flag_rejects_unknown_backend(self):
        result = subprocess.run(
            [sys.executable, "-c", PROBE],
            capture_output=True, text=True, env={**os.environ, "QGHZ_KERNELS": "cuda"},
        )
        assert result.returncode != 0
        assert "QGHZ_KERNELS" in result.stderr

    def test_set_backend_rejects_unknown_name(self):
        with pytest.raises(ValueError):
            kernels.set_backend("fortran")

    def test_set_backend_round_trip(self):
        previous = kernels.active_backend()
        try:
            kernels.set_backend("numpy")
            assert kernels.active_backend() == "numpy"
        finally:
            kernels.set_backend(previous)


class TestKernelAgreement:
    """Both backends perform the same arithmetic; results match bit for bit."""

    def random_state(self, n, seed):
        rng = np.random.Generator(np.random.PCG64(seed))
        amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        return (amps / np.linalg.norm(amps)).astype(np.complex128)

    @pytest.mark.parametrize("qubit", [0, 2, 4])
    def test_h_agreement(self, qubit):
        a = self.random_state(5, 3)
        b = a.copy()
        kernels._h_numba(a, qubit)
        kernels._h_numpy(b, qubit)
        np.testing.assert_array_equal(a, b)

    @pytest.mark.parametrize("qubit", [0, 3])
    def test_x_agreement(self, qubit):
        a = self.random_state(4, 5)
        b = a.copy()
        kernels._x_numba(a, qubit)
        kernels._x_numpy(b, qubit)
        np.testing.assert_array_equal(a, b)

    @pytest.mark.parametrize("control,target", [(0, 1), (3, 0), (2, 4)])
    def test_cnot_agreement(self, control, target):
        a = self.random_state(5, 7)
        b = a.copy()
        kernels._cnot_numba(a, control, target)
        kernels._cnot_numpy(b, control, target)
        np.testing.assert_array_equal(a, b)

    @pytest.mark.parametrize("qubits", [(0,), (2, 0), (1, 3, 2)])
    def test_marginal_agreement(self, qubits):
        amps = self.random_state(4, 11)
        qarray = np.asarray(qubits, dtype=np.int64)
        a = kernels._marginal_probs_numba(amps, qarray)
        b = kernels._marginal_probs_numpy(amps, qarray)
        np.testing.assert_array_equal(a, b)
        assert a.sum() == pytest.approx(1.0, abs=1e-12)

    def test_marginal_key_order_puts_first_qubit_leftmost(self):
        # |q1=1, q0=0> = index 2; measuring (q1, q0) must put q1 first -> key '10'
        amps = np.zeros(4, dtype=np.complex128)
        amps[2] = 1.0
        probs = kernels.marginal_probs(amps, (1, 0))
        assert probs.tolist() == [0.0, 0.0, 1.0, 0.0]
        probs = kernels.marginal_probs(amps, (0, 1))
        assert probs.tolist() == [0.0, 1.0, 0.0, 0.0]


def test_benchmark_smoke(capsys):
    from qghz.bench import main as bench_main

    assert bench_main(["--qubits", "8", "--repeats", "1", "--shots", "64"]) == 0
    out = capsys.readouterr().out
    assert "numpy" in out
    if kernels.NUMBA_AVAILABLE:
        assert "speedup" in out
